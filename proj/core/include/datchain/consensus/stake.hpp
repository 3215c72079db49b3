// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "datchain/crypto/hash.hpp"

namespace datchain::consensus {

inline constexpr std::int64_t kSecondsPerDay = 86400;

struct Validator {
    Address id;
    std::uint64_t coins = 0;
    std::int64_t held_since = 0;  // unix seconds
    bool is_byzantine = false;
    std::uint64_t approval_stake = 0;  // tokens voted to this validator (DPoS)
};

/// coins × whole days held. Saturates at UINT64_MAX. Throws ClockSkew when
/// now < held_since.
std::uint64_t pos_coin_age(const Validator& v, std::int64_t now);

/// Validator with the largest coin age; ties go to the smallest address.
Address pos_select_leader(std::span<const Validator> validators, std::int64_t now);

/// Top `num_delegates` by approval stake, ties by smallest address, in that
/// order.
std::vector<Address> dpos_elect(std::span<const Validator> validators, unsigned num_delegates);

/// Round-robin producer: delegates[slot mod size].
Address dpos_producer(std::span<const Address> delegates, std::uint64_t slot);

}  // namespace datchain::consensus
