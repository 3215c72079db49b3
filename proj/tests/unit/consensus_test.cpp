// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "datchain/consensus/config.hpp"
#include "datchain/consensus/fpc.hpp"
#include "datchain/consensus/pbft.hpp"
#include "datchain/consensus/rpca.hpp"
#include "datchain/consensus/stake.hpp"

using namespace datchain;
using namespace datchain::consensus;

namespace {

Validator val(const char* name, std::uint64_t coins, std::int64_t since, std::uint64_t approval = 0) {
    return Validator{sha256(name), coins, since, false, approval};
}

std::vector<Behavior> behaviors(unsigned n, unsigned byz, Behavior b) {
    std::vector<Behavior> out(n, Behavior::Honest);
    for (unsigned i = 0; i < byz; ++i) out[n - 1 - i] = b;
    return out;
}

std::vector<RpcaVoter> rpca_voters(unsigned n, unsigned approving) {
    std::vector<RpcaVoter> out(n);
    for (unsigned i = 0; i < n; ++i) out[i].approves = {i < approving};
    return out;
}

}  // namespace

TEST(Config, ParseAndFormat) {
    EXPECT_EQ(format_config(parse_config("pow:8")), "pow:8");
    EXPECT_EQ(format_config(parse_config("pbft:7")), "pbft:7:2");
    auto r = std::get<Rpca>(parse_config("rpca:0.8:5"));
    EXPECT_DOUBLE_EQ(r.threshold, 0.8);
    EXPECT_THROW(parse_config("rpca:0.5"), ConsensusError);
    EXPECT_THROW(parse_config("pow:40"), ConsensusError);
    EXPECT_THROW(parse_config("raft"), ConsensusError);
    EXPECT_FALSE(validate_config(Pbft{3, 1}).empty());
}

TEST(Stake, CoinAgeWholeDays) {
    auto v = val("a", 10, 0);
    EXPECT_EQ(pos_coin_age(v, kSecondsPerDay - 1), 0u);
    EXPECT_EQ(pos_coin_age(v, 3 * kSecondsPerDay + 5), 30u);
    EXPECT_THROW(pos_coin_age(val("b", 1, 100), 50), ConsensusError);
}

TEST(Stake, LeaderIsLargestCoinAgeWithAddressTieBreak) {
    std::vector<Validator> vs{val("a", 10, 0), val("b", 20, 0), val("c", 5, 0)};
    EXPECT_EQ(pos_select_leader(vs, 2 * kSecondsPerDay), sha256("b"));
    std::vector<Validator> tie{val("a", 10, 0), val("b", 10, 0)};
    EXPECT_EQ(pos_select_leader(tie, kSecondsPerDay), std::min(sha256("a"), sha256("b")));
    EXPECT_THROW(pos_select_leader({}, 0), ConsensusError);
}

TEST(Stake, DposElectionAndRoundRobin) {
    std::vector<Validator> vs{val("a", 0, 0, 5), val("b", 0, 0, 9), val("c", 0, 0, 7), val("d", 0, 0, 1)};
    auto d = dpos_elect(vs, 2);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], sha256("b"));
    EXPECT_EQ(d[1], sha256("c"));
    EXPECT_EQ(dpos_producer(d, 0), d[0]);
    EXPECT_EQ(dpos_producer(d, 3), d[1]);
    EXPECT_THROW(dpos_elect(vs, 5), ConsensusError);
}

TEST(Pbft, QuorumArithmetic) {
    EXPECT_EQ(pbft_quorum(4), 3u);
    EXPECT_EQ(pbft_quorum(7), 5u);
    EXPECT_EQ(pbft_max_faults(4), 1u);
    EXPECT_EQ(pbft_max_faults(7), 2u);
}

TEST(Pbft, CommitsWithinFaultBound) {
    const Hash v = sha256("block");
    for (auto b : {Behavior::Silent, Behavior::VoteNo, Behavior::Equivocate, Behavior::MinorityMax}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto out = pbft_round(v, behaviors(4, 1, b), seed);
            EXPECT_TRUE(out.all_committed()) << to_string(b) << " seed " << seed;
            EXPECT_EQ(out.decision(), v);
        }
    }
}

TEST(Pbft, PrimaryFailureTriggersViewChange) {
    std::vector<Behavior> b{Behavior::Silent, Behavior::Honest, Behavior::Honest, Behavior::Honest};
    auto out = pbft_round(sha256("x"), b, 3);
    EXPECT_TRUE(out.all_committed());
    EXPECT_GE(out.views, 2u);
}

TEST(Pbft, NoConflictBeyondBound) {
    for (auto kind : {Behavior::Silent, Behavior::VoteNo}) {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            auto out = pbft_round(sha256("y"), behaviors(4, 2, kind), seed);
            EXPECT_FALSE(out.conflict()) << seed;
        }
    }
}

TEST(Rpca, ThresholdInclusive) {
    EXPECT_TRUE(rpca_meets_threshold(8, 10, 0.8));
    EXPECT_FALSE(rpca_meets_threshold(7, 10, 0.8));
    EXPECT_TRUE(rpca_meets_threshold(4, 5, 0.8));
}

TEST(Rpca, BoundaryAcceptReject) {
    const Hash c = sha256("tx");
    std::vector<Hash> cands{c};
    auto yes = rpca_run(rpca_voters(10, 8), cands, Rpca{}, 1);
    EXPECT_TRUE(yes.agreement());
    EXPECT_EQ(yes.approved, cands);
    auto no = rpca_run(rpca_voters(10, 7), cands, Rpca{}, 1);
    EXPECT_TRUE(no.agreement());
    EXPECT_TRUE(no.approved.empty());
}

TEST(Fpc, UnanimousStartStays) {
    std::vector<bool> init(20, true);
    std::vector<Behavior> b(20, Behavior::Honest);
    auto out = fpc_run(init, b, Fpc{}, 5);
    EXPECT_TRUE(out.agreement());
    EXPECT_TRUE(out.consensus_value());
    EXPECT_FALSE(out.non_termination);
}

TEST(Fpc, DeterministicForSeed) {
    std::vector<bool> init(30);
    for (std::size_t i = 0; i < init.size(); ++i) init[i] = i % 3 != 0;
    auto b = behaviors(30, 3, Behavior::MinorityMax);
    auto a1 = fpc_run(init, b, Fpc{}, 9);
    auto a2 = fpc_run(init, b, Fpc{}, 9);
    EXPECT_EQ(a1.opinion, a2.opinion);
    EXPECT_EQ(a1.rounds, a2.rounds);
    EXPECT_EQ(a1.messages, a2.messages);
}
