// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/crypto/hash.hpp"

#include <sodium.h>

#include <bit>
#include <cstring>
#include <stdexcept>

#include "sodium_init.hpp"

namespace datchain {

static_assert(sizeof(crypto_hash_sha256_state) <= 128);

Hash Hash::from_hex(std::string_view hex) {
    if (hex.size() != 64) throw std::invalid_argument("hash hex must be 64 characters");
    return from_bytes(datchain::from_hex(hex));
}

Hash Hash::from_bytes(ByteView data) {
    if (data.size() != 32) throw std::invalid_argument("hash must be 32 bytes");
    Hash h;
    std::memcpy(h.bytes.data(), data.data(), 32);
    return h;
}

std::string Hash::hex() const { return to_hex(view()); }

bool Hash::is_zero() const {
    for (auto b : bytes)
        if (b != 0) return false;
    return true;
}

unsigned Hash::leading_zero_bits() const {
    unsigned n = 0;
    for (auto b : bytes) {
        if (b == 0) {
            n += 8;
            continue;
        }
        return n + static_cast<unsigned>(std::countl_zero(b));
    }
    return n;
}

Hash sha256(ByteView data) {
    detail::ensure_sodium();
    Hash h;
    crypto_hash_sha256(h.bytes.data(), data.data(), data.size());
    return h;
}

Sha256::Sha256() {
    detail::ensure_sodium();
    crypto_hash_sha256_init(reinterpret_cast<crypto_hash_sha256_state*>(state_.data()));
}

Sha256& Sha256::update(ByteView data) {
    crypto_hash_sha256_update(reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), data.data(),
                              data.size());
    return *this;
}

Hash Sha256::finish() {
    Hash h;
    crypto_hash_sha256_final(reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), h.bytes.data());
    return h;
}

Hash hmac_sha256(ByteView key, ByteView message) {
    detail::ensure_sodium();
    crypto_auth_hmacsha256_state st;
    crypto_auth_hmacsha256_init(&st, key.data(), key.size());
    crypto_auth_hmacsha256_update(&st, message.data(), message.size());
    Hash out;
    crypto_auth_hmacsha256_final(&st, out.bytes.data());
    sodium_memzero(&st, sizeof st);
    return out;
}

bool tags_equal(const Hash& a, const Hash& b) {
    return crypto_verify_32(a.bytes.data(), b.bytes.data()) == 0;
}

}  // namespace datchain
