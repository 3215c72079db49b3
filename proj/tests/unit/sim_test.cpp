// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "datchain/sim/bus.hpp"
#include "datchain/sim/scenario.hpp"
#include "datchain/sim/simulator.hpp"

using namespace datchain;
using namespace datchain::sim;

namespace {

SimScenario small(const std::string& engine, std::uint64_t seed = 3) {
    SimScenario s;
    s.engine = resolve_engine(engine, s.node_count);
    s.tx_count = 40;
    s.duration = 400;
    s.seed = seed;
    return s;
}

bool honest_agree(const SimResult& r) {
    std::optional<Hash> d;
    for (std::size_t i = 0; i < r.digests.size(); ++i) {
        if (!r.honest[i]) continue;
        if (d && *d != r.digests[i]) return false;
        d = r.digests[i];
    }
    return true;
}

}  // namespace

TEST(Bus, DelaysWithinBoundsAndDeterministic) {
    auto run = [](std::uint64_t seed) {
        MessageBus bus({2, 5, 0.3}, seed);
        for (NodeId i = 0; i < 50; ++i) bus.send(Message{MsgType::Vote, 0, i % 4, 0, Hash{}, 1, 0});
        auto out = bus.flush();
        for (const auto& m : out) {
            EXPECT_GE(m.arrival, 2u);
        }
        return std::make_pair(out.size(), bus.dropped());
    };
    EXPECT_EQ(run(9), run(9));
}

TEST(Bus, DueDeliveryRespectsClock) {
    MessageBus bus({3, 3, 0.0}, 1);
    bus.send(Message{MsgType::Vote, 0, 1, 0, Hash{}, 0, 0});
    EXPECT_TRUE(bus.deliver_due().empty());
    bus.advance(3);
    EXPECT_EQ(bus.deliver_due().size(), 1u);
    EXPECT_EQ(bus.in_flight(), 0u);
}

TEST(Scenario, ParseFormatRoundTrip) {
    auto s = parse_scenario(
        "# demo\nnodes = 7\nbyzantine = 2\nbehavior = equivocate\nengine = pbft\ntx_count = 20\nseed = 5\n");
    EXPECT_EQ(s.node_count, 7u);
    EXPECT_EQ(consensus::format_config(s.engine), "pbft:7:2");
    auto again = parse_scenario(format_scenario(s));
    EXPECT_EQ(format_scenario(again), format_scenario(s));
}

TEST(Scenario, RejectsInvalid) {
    EXPECT_THROW(parse_scenario("nodes = 0\n"), SimError);
    EXPECT_THROW(parse_scenario("nodes = 4\nbyzantine = 5\n"), SimError);
    EXPECT_THROW(parse_scenario("bogus = 1\n"), SimError);
    EXPECT_THROW(parse_scenario("ledger_mode = tangle\nengine = pbft\n"), SimError);
    EXPECT_THROW(parse_scenario("drop_rate = 1.5\n"), SimError);
}

TEST(Simulator, EveryEngineCommitsWorkload) {
    for (const char* e : {"pow:4", "pos", "dpos:2", "pbft", "rpca"}) {
        auto r = run_scenario(small(e));
        EXPECT_EQ(r.metrics.committed_tx_count, 40u) << e;
        EXPECT_FALSE(r.metrics.divergence_detected) << e;
        EXPECT_TRUE(r.metrics.quiescent) << e;
        EXPECT_TRUE(honest_agree(r)) << e;
    }
}

TEST(Simulator, TangleModes) {
    for (const char* e : {"pow:4", "fpc"}) {
        auto s = small(e);
        s.ledger_mode = ledger::LedgerMode::Tangle;
        auto r = run_scenario(s);
        EXPECT_EQ(r.metrics.committed_tx_count, 40u) << e;
        EXPECT_EQ(r.metrics.ledger_mode, "tangle");
        EXPECT_FALSE(r.metrics.divergence_detected) << e;
    }
}

TEST(Simulator, SameSeedSameCsv) {
    auto s = small("pbft", 17);
    s.drop_rate = 0.05;
    std::vector<SimMetrics> a{run_scenario(s).metrics}, b{run_scenario(s).metrics};
    EXPECT_EQ(metrics_csv(a), metrics_csv(b));
}

TEST(Simulator, PbftToleratesOneByzantine) {
    auto s = small("pbft", 4);
    s.byzantine_count = 1;
    s.behavior = consensus::Behavior::Equivocate;
    auto r = run_scenario(s);
    EXPECT_FALSE(r.metrics.divergence_detected);
    EXPECT_GT(r.metrics.committed_tx_count, 0u);
}

TEST(Simulator, CompareEnginesOneRowEach) {
    auto base = small("pow:4");
    std::vector<consensus::ConsensusConfig> engines{consensus::Pow{4}, consensus::Pbft{}, consensus::Rpca{}};
    auto rows = compare_engines(base, engines);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1].engine, "pbft:4:1");
    auto csv = metrics_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), metrics_csv_header());
}
