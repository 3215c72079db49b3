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

struct RpcaVoter {
    Behavior behavior = Behavior::Honest;
    /// Honest vote per candidate, aligned with the candidate list. Honest
    /// voters keep the same vote in every round.
    std::vector<bool> approves;
};

struct RpcaOutcome {
    /// Approved candidates in candidate order.
    std::vector<Hash> approved;
    /// Round (1-based) in which each approved candidate crossed the threshold.
    std::vector<unsigned> approved_round;
    /// Each honest node's own approved set; empty for Byzantine nodes.
    std::vector<std::vector<Hash>> per_node;
    std::vector<bool> honest;
    unsigned rounds = 0;
    std::uint64_t messages = 0;

    /// All honest nodes approved the same set.
    bool agreement() const;
};

/// yes / total >= threshold, inclusive, with a 1e-9 guard against binary
/// rounding of the threshold.
bool rpca_meets_threshold(std::size_t yes, std::size_t total, double threshold);

/// Iterative voting: each round every node broadcasts a vote on every
/// pending candidate; a candidate is approved in the round where its yes
/// votes reach threshold × n. Candidates still pending after max_rounds are
/// dropped. Silent nodes send nothing; every other Byzantine behaviour votes
/// no (votes are one broadcast per voter per round, so per-peer
/// equivocation is outside this model).
RpcaOutcome rpca_run(sim::MessageBus& bus, std::span<const RpcaVoter> nodes, std::span<const Hash> candidates,
                     const Rpca& config, Rng& rng);

RpcaOutcome rpca_run(std::span<const RpcaVoter> nodes, std::span<const Hash> candidates, const Rpca& config,
                     std::uint64_t seed);

}  // namespace datchain::consensus
