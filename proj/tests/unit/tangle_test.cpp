// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "datchain/market/actions.hpp"
#include "datchain/tangle/tangle.hpp"
#include "support.hpp"

using namespace datchain;
namespace ts = datchain::test_support;

namespace {

ledger::Transaction signup(const std::string& label) {
    auto k = ts::key(label);
    return market::make_action_tx(market::SignUpAction{k.public_key(), market::Role::Both, 1, 0}, 1, k);
}

}  // namespace

TEST(Tangle, GenesisOnly) {
    tangle::TangleState t;
    EXPECT_EQ(t.size(), 1u);
    EXPECT_EQ(t.tips().size(), 1u);
    EXPECT_EQ(tangle::cumulative_weight(t, t.genesis_id()), 1u);
}

TEST(Tangle, AttachUpdatesTipsAndWeights) {
    tangle::TangleState t;
    for (int i = 0; i < 20; ++i) t = tangle::attach(std::move(t), signup("t" + std::to_string(i)),
                                                    tangle::TipStrategy::WeightedWalk, 4, i);
    EXPECT_EQ(t.size(), 21u);
    EXPECT_EQ(tangle::cumulative_weight(t, t.genesis_id()), 21u);
    EXPECT_EQ(t.tips(), ts::brute_tips(t));
    for (const auto& id : t.order()) {
        if (id == t.genesis_id()) continue;
        EXPECT_GE(t.site(id).site_id.leading_zero_bits(), 4u);
    }
}

TEST(Tangle, WeightsMatchBruteForce) {
    Rng rng(11);
    auto t = ts::random_tangle(rng, 60);
    auto brute = ts::brute_weights(t);
    auto fast = tangle::all_weights(t);
    for (const auto& id : t.order()) {
        EXPECT_EQ(fast.at(id), brute.at(id));
        EXPECT_EQ(tangle::cumulative_weight(t, id), brute.at(id));
    }
}

TEST(Tangle, RejectsBadSites) {
    tangle::TangleState t;
    auto site = tangle::make_site(t, signup("x"), tangle::TipStrategy::Uniform, 0, 1);
    auto bad_id = site;
    bad_id.site_id.bytes[31] ^= 1;
    EXPECT_THROW(tangle::insert_site(t, bad_id, 0), tangle::TangleError);
    auto orphan = site;
    orphan.parent_a = sha256("missing");
    orphan.site_id = tangle::compute_site_id(orphan.parent_a, orphan.parent_b, *orphan.payload, orphan.nonce);
    EXPECT_THROW(tangle::insert_site(t, orphan, 0), tangle::TangleError);

    tangle::insert_site(t, site, 0);
    EXPECT_THROW(tangle::insert_site(t, site, 0), tangle::TangleError);

    // Unknown sender: a transfer before the account signed up.
    auto k = ts::key("ghost");
    auto tx = market::make_action_tx(market::TransferAction{k.address(), 1}, 1, k);
    try {
        tangle::make_site(t, tx, tangle::TipStrategy::Uniform, 0, 2);
        tangle::attach(t, tx, tangle::TipStrategy::Uniform, 0, 2);
        FAIL();
    } catch (const tangle::TangleError& e) {
        EXPECT_EQ(e.code(), tangle::TangleErrc::InvalidTransaction);
    }
}

TEST(Tangle, SiteEncodeRoundTripAndVerify) {
    Rng rng(12);
    tangle::TangleState t;
    std::vector<tangle::TangleSite> sites{tangle::genesis_site()};
    for (int i = 0; i < 15; ++i) {
        auto s = tangle::make_site(t, signup("v" + std::to_string(i)), tangle::TipStrategy::WeightedWalk, 3, rng.next());
        tangle::insert_site(t, s, 3);
        EXPECT_EQ(tangle::TangleSite::decode(s.encode()), s);
        sites.push_back(s);
    }
    EXPECT_TRUE(tangle::verify_sites(sites, 3).valid);
    sites[9].nonce ^= 1;
    auto r = tangle::verify_sites(sites, 3);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.first_bad_index, 9u);
}

TEST(Tangle, ConfirmationThreshold) {
    tangle::TangleState t;
    for (int i = 0; i < 10; ++i)
        t = tangle::attach(std::move(t), signup("c" + std::to_string(i)), tangle::TipStrategy::Uniform, 0, i);
    EXPECT_TRUE(tangle::is_confirmed(t, t.genesis_id(), 11));
    EXPECT_FALSE(tangle::is_confirmed(t, t.order().back(), 2));
}
