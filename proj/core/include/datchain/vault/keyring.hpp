// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>

#include "datchain/vault/envelope.hpp"

namespace datchain::vault {

struct StreamKey {
    Hash key_id;
    Hash stream_id;
    AeadKey secret{};
    /// Next unused nonce counter for this key.
    std::uint64_t next_nonce = 0;
};

/// Local key file holding one symmetric key per stream and the watermark
/// master key. Every mutation is written through to disk (mode 0600).
/// An empty path keeps the ring in memory only.
class KeyRing {
public:
    static KeyRing open(const std::filesystem::path& path);
    static KeyRing in_memory();

    KeyRing(KeyRing&& other) noexcept;

    const AeadKey& watermark_master() const { return master_; }

    /// Key for the stream, created on first use.
    StreamKey key_for(const Hash& stream_id);
    std::optional<StreamKey> find(const Hash& stream_id) const;

    /// Encrypts with the stream key and advances its persisted counter.
    DataEnvelope seal(const Hash& stream_id, ByteView plaintext, std::int64_t captured_at, const Hash& sensor_id);

    std::size_t size() const;

private:
    KeyRing() = default;

    void load();
    void save() const;
    StreamKey& key_locked(const Hash& stream_id);

    std::filesystem::path path_;
    AeadKey master_{};
    std::map<Hash, StreamKey> keys_;
    mutable std::mutex mu_;
};

}  // namespace datchain::vault
