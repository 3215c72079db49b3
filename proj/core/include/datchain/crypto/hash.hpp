// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "datchain/common/bytes.hpp"

namespace datchain {

/// 32-byte SHA-256 digest. Hex rendering is 64 lowercase characters.
struct Hash {
    std::array<std::uint8_t, 32> bytes{};

    static Hash zero() { return {}; }
    static Hash from_hex(std::string_view hex);
    static Hash from_bytes(ByteView data);

    std::string hex() const;
    bool is_zero() const;
    ByteView view() const { return {bytes.data(), bytes.size()}; }

    /// Number of leading zero bits, 0..256.
    unsigned leading_zero_bits() const;

    auto operator<=>(const Hash&) const = default;
};

/// Participant identity: SHA-256 of the Ed25519 public key.
using Address = Hash;

Hash sha256(ByteView data);
inline Hash sha256(std::string_view s) { return sha256(as_bytes(s)); }

/// Incremental SHA-256 for multi-part inputs.
class Sha256 {
public:
    Sha256();
    Sha256& update(ByteView data);
    Sha256& update(std::string_view s) { return update(as_bytes(s)); }
    Sha256& update(const Hash& h) { return update(h.view()); }
    Hash finish();

private:
    alignas(64) std::array<unsigned char, 128> state_;
};

/// HMAC-SHA-256 with an arbitrary-length key.
Hash hmac_sha256(ByteView key, ByteView message);

/// Constant-time comparison, for MAC tags.
bool tags_equal(const Hash& a, const Hash& b);

}  // namespace datchain

template <>
struct std::hash<datchain::Hash> {
    std::size_t operator()(const datchain::Hash& h) const noexcept {
        std::size_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | h.bytes[i];
        return v;
    }
};
