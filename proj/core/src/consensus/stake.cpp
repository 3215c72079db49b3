// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/stake.hpp"

#include <algorithm>
#include <limits>

#include "datchain/consensus/config.hpp"

namespace datchain::consensus {

std::uint64_t pos_coin_age(const Validator& v, std::int64_t now) {
    if (now < v.held_since) throw ConsensusError(ConsensusErrc::ClockSkew, "now precedes held_since");
    auto days = static_cast<std::uint64_t>((now - v.held_since) / kSecondsPerDay);
    if (days != 0 && v.coins > std::numeric_limits<std::uint64_t>::max() / days) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return v.coins * days;
}

Address pos_select_leader(std::span<const Validator> validators, std::int64_t now) {
    if (validators.empty()) throw ConsensusError(ConsensusErrc::EmptySet);
    const Validator* best = nullptr;
    std::uint64_t best_age = 0;
    for (const auto& v : validators) {
        auto age = pos_coin_age(v, now);
        if (!best || age > best_age || (age == best_age && v.id < best->id)) {
            best = &v;
            best_age = age;
        }
    }
    return best->id;
}

std::vector<Address> dpos_elect(std::span<const Validator> validators, unsigned num_delegates) {
    if (num_delegates < 1) throw ConsensusError(ConsensusErrc::InvalidConfig, "num_delegates must be >= 1");
    if (num_delegates > validators.size()) {
        throw ConsensusError(ConsensusErrc::TooFewValidators,
                             std::to_string(validators.size()) + " validators for " +
                                 std::to_string(num_delegates) + " delegates");
    }
    std::vector<const Validator*> ranked;
    ranked.reserve(validators.size());
    for (const auto& v : validators) ranked.push_back(&v);
    std::sort(ranked.begin(), ranked.end(), [](const Validator* a, const Validator* b) {
        if (a->approval_stake != b->approval_stake) return a->approval_stake > b->approval_stake;
        return a->id < b->id;
    });
    std::vector<Address> out;
    out.reserve(num_delegates);
    for (unsigned i = 0; i < num_delegates; ++i) out.push_back(ranked[i]->id);
    return out;
}

Address dpos_producer(std::span<const Address> delegates, std::uint64_t slot) {
    if (delegates.empty()) throw ConsensusError(ConsensusErrc::EmptySet);
    return delegates[slot % delegates.size()];
}

}  // namespace datchain::consensus
