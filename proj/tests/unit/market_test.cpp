// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "datchain/market/actions.hpp"
#include "datchain/market/market.hpp"
#include "support.hpp"

using namespace datchain;
using namespace datchain::market;
namespace ts = datchain::test_support;

namespace {

const SensorMetadata kMeta{"thermo", "temperature", "C", "lab-1"};

MarketErrc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const MarketError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no MarketError";
    return MarketErrc::InvalidAction;
}

}  // namespace

TEST(Market, SignUpGrantsTokens) {
    MarketState m;
    auto k = ts::key("alice");
    auto [acct, tx] = sign_up(m, k, Role::Both, kDefaultInitialGrant, 100);
    EXPECT_EQ(acct.balance, 100u);
    EXPECT_EQ(m.account(k.address())->balance, 100u);
    EXPECT_EQ(m.total_supply(), 100u);
    EXPECT_EQ(code_of([&] { sign_up(m, k, Role::Both, 100, 101); }), MarketErrc::DuplicateAccount);
}

TEST(Market, RegisterSubscribePaysOwner) {
    MarketState m;
    auto owner = ts::key("owner"), buyer = ts::key("buyer");
    sign_up(m, owner, Role::Owner, 100, 0);
    sign_up(m, buyer, Role::Buyer, 100, 0);
    auto [sensor, stream, _] = register_sensor(m, owner, kMeta, 30, 3600, "json");
    EXPECT_EQ(stream.stream_id, derive_stream_id(sensor.sensor_id));
    auto [sub, stx] = subscribe(m, buyer, stream.stream_id, 1000);
    EXPECT_EQ(sub.expiry, 1000 + 3600);
    EXPECT_EQ(sub.paid, 30u);
    EXPECT_EQ(m.account(buyer.address())->balance, 70u);
    EXPECT_EQ(m.account(owner.address())->balance, 130u);
    EXPECT_EQ(m.balance_sum(), m.total_supply());
    EXPECT_TRUE(has_access(m, buyer.address(), stream.stream_id, 1000));
    EXPECT_TRUE(has_access(m, buyer.address(), stream.stream_id, 4599));
    EXPECT_FALSE(has_access(m, buyer.address(), stream.stream_id, 4600));
    EXPECT_FALSE(has_access(m, buyer.address(), stream.stream_id, 999));
}

TEST(Market, InsufficientFundsLeavesStateUnchanged) {
    MarketState m;
    auto owner = ts::key("o2"), buyer = ts::key("b2");
    sign_up(m, owner, Role::Owner, 100, 0);
    sign_up(m, buyer, Role::Buyer, 10, 0);
    auto [sensor, stream, _] = register_sensor(m, owner, kMeta, 30, 60, "");
    auto before = m;
    EXPECT_EQ(code_of([&] { subscribe(m, buyer, stream.stream_id, 5); }), MarketErrc::InsufficientFunds);
    EXPECT_EQ(m, before);
}

TEST(Market, SequenceAndSignatureChecks) {
    MarketState m;
    auto a = ts::key("a"), b = ts::key("b");
    sign_up(m, a, Role::Both, 50, 0);
    sign_up(m, b, Role::Both, 50, 0);
    auto t = make_action_tx(TransferAction{b.address(), 5}, 2, a);
    m.apply(t);
    EXPECT_FALSE(m.apply(t));
    auto replay = make_action_tx(TransferAction{b.address(), 5}, 2, a);
    auto fresh = MarketState(m);
    auto t3 = make_action_tx(TransferAction{b.address(), 5}, 3, a);
    t3.signature[5] ^= 1;
    EXPECT_EQ(code_of([&] { fresh.validate(t3); }), MarketErrc::BadSignature);
    auto skip = make_action_tx(TransferAction{b.address(), 1}, 9, a);
    EXPECT_NO_THROW(m.validate(skip));
    auto old = make_action_tx(TransferAction{b.address(), 1}, 1, a);
    EXPECT_EQ(code_of([&] { m.validate(old); }), MarketErrc::BadSequence);
}

TEST(Market, OnlyOwnerPublishes) {
    MarketState m;
    auto owner = ts::key("o3"), other = ts::key("x3");
    sign_up(m, owner, Role::Owner, 0, 0);
    sign_up(m, other, Role::Both, 0, 0);
    auto [sensor, stream, _] = register_sensor(m, owner, kMeta, 1, 10, "");
    EXPECT_EQ(code_of([&] { publish_data(m, other, sensor.sensor_id, sha256("e"), 1); }), MarketErrc::NotOwner);
    auto [env, tx] = publish_data(m, owner, sensor.sensor_id, sha256("e"), 1);
    EXPECT_EQ(env.tx_id, tx.id());
    EXPECT_EQ(code_of([&] { publish_data(m, owner, sensor.sensor_id, sha256("e"), 2); }),
              MarketErrc::DuplicateEnvelope);
}

TEST(Market, DeliveryRequiresActiveSubscription) {
    MarketState m;
    auto node = ts::key("node"), owner = ts::key("o4"), buyer = ts::key("b4");
    sign_up(m, node, Role::Operator, 0, 0);
    sign_up(m, owner, Role::Owner, 0, 0);
    sign_up(m, buyer, Role::Buyer, 100, 0);
    auto [sensor, stream, _] = register_sensor(m, owner, kMeta, 10, 100, "");
    auto [env, etx] = publish_data(m, node, sensor.sensor_id, sha256("e4"), 3);
    auto [sub, stx] = subscribe(m, buyer, stream.stream_id, 50);
    EXPECT_NO_THROW(record_delivery(m, node, sub.sub_id, env.envelope_id, sha256("tag"), 60));
    EXPECT_EQ(code_of([&] { record_delivery(m, node, sub.sub_id, env.envelope_id, sha256("tag"), 150); }),
              MarketErrc::AccessDenied);
    EXPECT_EQ(code_of([&] { record_delivery(m, buyer, sub.sub_id, env.envelope_id, sha256("tag"), 60); }),
              MarketErrc::NotOwner);
    EXPECT_EQ(m.deliveries().size(), 1u);
}

TEST(Market, SecondOperatorRejected) {
    MarketState m;
    sign_up(m, ts::key("n1"), Role::Operator, 0, 0);
    EXPECT_EQ(code_of([&] { sign_up(m, ts::key("n2"), Role::Operator, 0, 0); }), MarketErrc::InvalidAction);
}

TEST(Market, ReplayEqualsLiveAndSerializes) {
    MarketState live;
    std::vector<ledger::Transaction> log;
    auto owner = ts::key("o5"), buyer = ts::key("b5");
    log.push_back(sign_up(live, owner, Role::Owner, 100, 0).second);
    log.push_back(sign_up(live, buyer, Role::Buyer, 100, 0).second);
    auto [sensor, stream, rtx] = register_sensor(live, owner, kMeta, 7, 10, "csv");
    log.push_back(rtx);
    log.push_back(subscribe(live, buyer, stream.stream_id, 1).second);
    log.push_back(transfer(live, buyer, owner.address(), 3));
    MarketState replayed;
    apply_committed(replayed, log);
    EXPECT_EQ(replayed, live);
    EXPECT_EQ(replayed.serialize(), live.serialize());
    EXPECT_EQ(replayed.digest(), live.digest());

    std::swap(log[0], log[3]);
    MarketState bad;
    EXPECT_EQ(code_of([&] { apply_committed(bad, log); }), MarketErrc::StateDivergence);
}

TEST(Actions, DecodeRejectsGarbage) {
    auto k = ts::key("d");
    auto tx = make_action_tx(TransferAction{k.address(), 1}, 1, k);
    EXPECT_NO_THROW(decode_action(tx));
    tx.payload.push_back(0);
    EXPECT_THROW(decode_action(tx), DecodeError);
    tx.payload.resize(3);
    EXPECT_THROW(decode_action(tx), DecodeError);
}
