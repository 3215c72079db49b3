// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "datchain/common/bytes.hpp"

namespace datchain {

// ChaCha20-Poly1305 (IETF, RFC 8439). Ciphertext output carries the 16-byte
// tag appended.

using AeadKey = std::array<std::uint8_t, 32>;
using AeadNonce = std::array<std::uint8_t, 12>;

inline constexpr std::size_t kAeadTagSize = 16;

Bytes aead_seal(const AeadKey& key, const AeadNonce& nonce, ByteView aad, ByteView plaintext);

/// nullopt when authentication fails.
std::optional<Bytes> aead_open(const AeadKey& key, const AeadNonce& nonce, ByteView aad,
                               ByteView ciphertext);

/// Fills `out` from the system CSPRNG.
void random_bytes(std::span<std::uint8_t> out);

}  // namespace datchain
