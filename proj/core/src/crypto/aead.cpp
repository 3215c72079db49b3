// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/crypto/aead.hpp"

#include <sodium.h>

#include "sodium_init.hpp"

namespace datchain {

static_assert(crypto_aead_chacha20poly1305_ietf_KEYBYTES == 32);
static_assert(crypto_aead_chacha20poly1305_ietf_NPUBBYTES == 12);
static_assert(crypto_aead_chacha20poly1305_ietf_ABYTES == kAeadTagSize);

Bytes aead_seal(const AeadKey& key, const AeadNonce& nonce, ByteView aad, ByteView plaintext) {
    detail::ensure_sodium();
    Bytes out(plaintext.size() + kAeadTagSize);
    unsigned long long len = 0;
    crypto_aead_chacha20poly1305_ietf_encrypt(out.data(), &len, plaintext.data(), plaintext.size(),
                                              aad.data(), aad.size(), nullptr, nonce.data(),
                                              key.data());
    out.resize(len);
    return out;
}

std::optional<Bytes> aead_open(const AeadKey& key, const AeadNonce& nonce, ByteView aad,
                               ByteView ciphertext) {
    detail::ensure_sodium();
    if (ciphertext.size() < kAeadTagSize) return std::nullopt;
    Bytes out(ciphertext.size() - kAeadTagSize);
    unsigned long long len = 0;
    if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &len, nullptr, ciphertext.data(),
                                                  ciphertext.size(), aad.data(), aad.size(),
                                                  nonce.data(), key.data()) != 0) {
        return std::nullopt;
    }
    out.resize(len);
    return out;
}

void random_bytes(std::span<std::uint8_t> out) {
    detail::ensure_sodium();
    randombytes_buf(out.data(), out.size());
}

}  // namespace datchain
