// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "datchain/common/rng.hpp"
#include "datchain/consensus/config.hpp"
#include "datchain/sim/bus.hpp"

namespace datchain::consensus {

struct FpcOutcome {
    std::vector<bool> opinion;
    std::vector<bool> finalized;
    /// Round in which each node finalized, 0 if it never did.
    std::vector<unsigned> finalized_round;
    std::vector<bool> honest;
    unsigned rounds = 0;
    /// max_rounds reached before every honest node finalized.
    bool non_termination = false;
    std::uint64_t messages = 0;

    /// Every honest node holds the same opinion.
    bool agreement() const;
    /// The common honest opinion; false if there is none.
    bool consensus_value() const;
};

/// Fast Probabilistic Consensus on one binary question.
///
/// Each round draws one shared threshold uniformly from
/// [theta_low, theta_high]. Every honest node that has not finalized samples
/// k distinct nodes (itself included; k >= n means everyone), queries them
/// over the bus and adopts "yes" iff the yes fraction of the answers is at
/// least the threshold. Answers reflect opinions at the start of the round.
/// A node's stability counter is the number of consecutive rounds whose
/// outcome equals its current opinion (a change restarts it at 1); it
/// finalizes when the counter reaches ell and keeps answering queries.
///
/// Byzantine responders: Silent never answers, VoteNo answers no,
/// MinorityMax answers with the opinion currently held by fewer honest
/// nodes (no on a tie), Equivocate answers a fresh random bit per query.
FpcOutcome fpc_run(sim::MessageBus& bus, const std::vector<bool>& initial, std::span<const Behavior> behaviors,
                   const Fpc& config, Rng& rng);

FpcOutcome fpc_run(const std::vector<bool>& initial, std::span<const Behavior> behaviors, const Fpc& config,
                   std::uint64_t seed);

}  // namespace datchain::consensus
