// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/crypto/keys.hpp"

#include <sodium.h>

#include "sodium_init.hpp"

namespace datchain {

static_assert(crypto_sign_PUBLICKEYBYTES == 32);
static_assert(crypto_sign_SECRETKEYBYTES == 64);
static_assert(crypto_sign_BYTES == 64);

KeyPair KeyPair::generate() {
    detail::ensure_sodium();
    Seed seed;
    randombytes_buf(seed.data(), seed.size());
    return from_seed(seed);
}

KeyPair KeyPair::from_seed(const Seed& seed) {
    detail::ensure_sodium();
    KeyPair kp;
    kp.seed_ = seed;
    crypto_sign_seed_keypair(kp.public_.data(), kp.secret_.data(), seed.data());
    return kp;
}

Address KeyPair::address() const { return address_of(public_); }

Signature KeyPair::sign(ByteView message) const {
    Signature sig;
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret_.data());
    return sig;
}

Address address_of(const PublicKey& pk) { return sha256(ByteView{pk.data(), pk.size()}); }

bool verify_signature(const PublicKey& pk, ByteView message, const Signature& sig) {
    detail::ensure_sodium();
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pk.data()) == 0;
}

Seed seed_from_label(std::string_view label) {
    return Sha256().update("datchain-seed:").update(label).finish().bytes;
}

}  // namespace datchain
