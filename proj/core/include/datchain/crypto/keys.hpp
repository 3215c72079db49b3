// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>

#include "datchain/common/bytes.hpp"
#include "datchain/crypto/hash.hpp"

namespace datchain {

using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;
using Seed = std::array<std::uint8_t, 32>;

/// Ed25519 signing key pair.
class KeyPair {
public:
    /// Fresh key from the system CSPRNG.
    static KeyPair generate();
    /// Deterministic key from a 32-byte seed (tests, simulation, keygen).
    static KeyPair from_seed(const Seed& seed);

    const PublicKey& public_key() const { return public_; }
    const Seed& seed() const { return seed_; }
    Address address() const;

    Signature sign(ByteView message) const;

private:
    KeyPair() = default;

    Seed seed_{};
    PublicKey public_{};
    std::array<std::uint8_t, 64> secret_{};
};

Address address_of(const PublicKey& pk);

bool verify_signature(const PublicKey& pk, ByteView message, const Signature& sig);

/// Seeds derived from a label, for reproducible keys in tests and sims.
Seed seed_from_label(std::string_view label);

}  // namespace datchain
