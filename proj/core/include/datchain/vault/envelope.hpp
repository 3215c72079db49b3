// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>

#include "datchain/common/error.hpp"
#include "datchain/crypto/aead.hpp"
#include "datchain/crypto/hash.hpp"

namespace datchain::vault {

enum class VaultErrc {
    PayloadTooLarge,
    NonceExhausted,
    AuthFailure,
    AccessDenied,
    NotFound,
    IntegrityFailure,
    AmbiguousAttribution,
    UnknownKey,
    Malformed,
    Io,
};

const char* to_string(VaultErrc code);

using VaultError = CodedError<VaultErrc>;

inline constexpr std::size_t kMaxPayloadSize = std::size_t{1} << 20;

/// Encrypted sensor reading. Ciphertext carries the 16-byte AEAD tag.
struct DataEnvelope {
    Hash envelope_id;
    Hash sensor_id;
    std::int64_t captured_at = 0;
    AeadNonce nonce{};
    Bytes ciphertext;

    /// Associated data: sensor_id ‖ captured_at.
    Bytes aad() const;

    /// sensor_id ‖ captured_at ‖ nonce ‖ len-prefixed ciphertext. The
    /// envelope id is the SHA-256 of these bytes.
    Bytes sealed_bytes() const;
    Hash compute_id() const;

    Bytes encode() const;
    static DataEnvelope decode(ByteView data);

    bool operator==(const DataEnvelope&) const = default;
};

/// 96-bit counter nonces: four zero bytes then a big-endian u64.
class NonceCounter {
public:
    explicit NonceCounter(std::uint64_t next = 0) : next_(next) {}

    AeadNonce take();
    std::uint64_t next() const { return next_; }
    bool exhausted() const { return exhausted_; }

private:
    std::uint64_t next_;
    bool exhausted_ = false;
};

AeadNonce counter_nonce(std::uint64_t counter);

DataEnvelope encrypt_payload(ByteView plaintext, const AeadKey& key, std::int64_t captured_at,
                             const Hash& sensor_id, NonceCounter& nonces);

/// Throws AuthFailure on any tampering or wrong key.
Bytes decrypt_payload(const DataEnvelope& envelope, const AeadKey& key);

}  // namespace datchain::vault
