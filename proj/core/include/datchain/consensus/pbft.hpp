// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "datchain/common/rng.hpp"
#include "datchain/consensus/config.hpp"
#include "datchain/sim/bus.hpp"

namespace datchain::consensus {

/// Matching messages needed in the prepare and commit phases.
constexpr unsigned pbft_quorum(unsigned n) { return 2 * n / 3 + 1; }

/// Largest tolerated fault count for n replicas.
constexpr unsigned pbft_max_faults(unsigned n) { return n == 0 ? 0 : (n - 1) / 3; }

struct PbftReplica {
    bool honest = true;
    bool committed = false;
    Hash value;
};

struct PbftOutcome {
    std::vector<PbftReplica> replicas;
    unsigned views = 0;
    std::uint64_t messages = 0;

    /// Every honest replica committed, all to the same value.
    bool all_committed() const;
    /// No honest replica committed.
    bool none_committed() const;
    /// Two honest replicas committed different values.
    bool conflict() const;
    /// The value committed by honest replicas, if any committed.
    std::optional<Hash> decision() const;
};

/// One agreement instance on `proposal` over the bus: pre-prepare, prepare,
/// commit, then a decision echo so lagging honest replicas adopt a value
/// reported by f + 1 peers. A view whose primary fails to drive a commit is
/// followed by the next view (primary = view mod n), up to n views, until
/// every honest replica has committed. Replicas lock on the value they last
/// prepared; on a view change the new primary re-proposes the most recently
/// certified lock it is told about.
///
/// `behaviors[i]` is the behaviour of replica i. Silent sends nothing,
/// VoteNo and MinorityMax send explicit no votes, Equivocate splits its
/// messages between the proposal and a conflicting value per recipient.
PbftOutcome pbft_round(sim::MessageBus& bus, const Hash& proposal, std::span<const Behavior> behaviors, Rng& rng);

/// Standalone form on a private zero-loss bus.
PbftOutcome pbft_round(const Hash& proposal, std::span<const Behavior> behaviors, std::uint64_t seed);

}  // namespace datchain::consensus
