// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <cstdlib>

#include "datchain/service/config.hpp"
#include "datchain/service/ledger_io.hpp"
#include "datchain/service/session.hpp"
#include "live_node.hpp"

using namespace datchain;
using namespace datchain::service;
namespace ts = datchain::test_support;

namespace {

const market::SensorMetadata kMeta{"meter", "power", "W", "roof"};

Hash h(const Json& j, const char* field) { return Hash::from_hex(j.at(field).get<std::string>()); }

}  // namespace

TEST(Config, ParseAndEnvironment) {
    auto c = parse_node_config("ledger_mode = tangle\nengine = fpc\nport = 9000\n# c\ninitial_grant = 50\n");
    EXPECT_EQ(c.ledger_mode, ledger::LedgerMode::Tangle);
    EXPECT_EQ(c.port, 9000);
    EXPECT_EQ(c.initial_grant, 50u);
    EXPECT_THROW(parse_node_config("port = 70000\n"), std::invalid_argument);
    EXPECT_THROW(parse_node_config("colour = red\n"), std::invalid_argument);
    ::setenv("DATCHAIN_DATA_DIR", "/tmp/override", 1);
    apply_environment(c);
    ::unsetenv("DATCHAIN_DATA_DIR");
    EXPECT_EQ(c.data_dir, "/tmp/override");
    EXPECT_EQ(parse_node_config(format_node_config(c)).port, 9000);
}

TEST(Session, IssueVerifyExpire) {
    SessionIssuer issuer(to_bytes("secret"), 60);
    auto t = issuer.issue(sha256("a"), 1000);
    EXPECT_EQ(issuer.verify(t.encode(), 1000), sha256("a"));
    EXPECT_EQ(issuer.verify(t.encode(), 1059), sha256("a"));
    EXPECT_FALSE(issuer.verify(t.encode(), 1060));
    SessionIssuer other(to_bytes("other"), 60);
    EXPECT_FALSE(other.verify(t.encode(), 1000));
    EXPECT_FALSE(issuer.verify("garbage", 1000));
}

TEST(Session, EveryMutatedByteRejected) {
    SessionIssuer issuer(to_bytes("k"), 600);
    auto t = issuer.issue(sha256("u"), 5000);
    Bytes raw = from_base64(t.encode());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        for (std::uint8_t flip : {0x01, 0x80, 0xff}) {
            Bytes m = raw;
            m[i] ^= flip;
            EXPECT_FALSE(issuer.verify(to_base64(m), 5000)) << "byte " << i;
        }
    }
}

class ApiTest : public ::testing::TestWithParam<ledger::LedgerMode> {};

TEST_P(ApiTest, FullFlowRoundTrip) {
    ts::LiveNode live(GetParam());
    auto owner = live.client("owner");
    auto buyer = live.client("buyer");
    auto signup = owner.sign_up(market::Role::Owner);
    ASSERT_EQ(signup.status, 201) << signup.body.dump();
    EXPECT_EQ(signup.body["account"]["balance"], 100);
    ASSERT_EQ(buyer.sign_up(market::Role::Buyer).status, 201);

    auto reg = owner.register_sensor(kMeta, 25, 3600, "text");
    ASSERT_EQ(reg.status, 201) << reg.body.dump();
    const Hash sensor = h(reg.body["sensor"], "sensor_id");
    const Hash stream = h(reg.body["stream"], "stream_id");

    const std::string payload = "watts=412";
    auto pub = owner.publish(sensor, as_bytes(payload), live.clock.load());
    ASSERT_EQ(pub.status, 201) << pub.body.dump();
    const Hash env = h(pub.body, "envelope_id");

    EXPECT_EQ(buyer.fetch(env).status, 403);

    auto sub = buyer.subscribe(stream);
    ASSERT_EQ(sub.status, 201) << sub.body.dump();
    EXPECT_EQ(sub.body["receipt"]["paid"], 25);
    EXPECT_EQ(sub.body["receipt"]["balance"], 75);

    auto got = buyer.fetch(env);
    ASSERT_EQ(got.status, 200) << got.body.dump();
    auto pt = from_base64(got.body["payload"].get<std::string>());
    EXPECT_EQ(std::string(pt.begin(), pt.end()), payload);
    EXPECT_EQ(got.tx_header, got.body["commit"]["tx_id"]);

    std::vector<std::string> tx_ids{signup.body["commit"]["tx_id"], reg.body["commit"]["tx_id"],
                                    pub.body["commit"]["tx_id"], sub.body["receipt"]["tx_id"],
                                    got.body["commit"]["tx_id"]};
    for (const auto& id : tx_ids) EXPECT_EQ(buyer.get("/ledger/tx/" + id).status, 200) << id;

    auto accounts = buyer.get("/accounts");
    ASSERT_EQ(accounts.status, 200);
    EXPECT_EQ(accounts.body["accounts"].size(), 3u);
    auto owner_acct = buyer.get("/accounts/" + owner.address().hex());
    EXPECT_EQ(owner_acct.body["balance"], 125);
}

TEST_P(ApiTest, AuthIsEnforced) {
    ts::LiveNode live(GetParam());
    auto c = live.client("auth");
    ASSERT_EQ(c.sign_up(market::Role::Both).status, 201);
    const std::string good = c.token();

    auto try_all = [&](ts::LiveNode&, service::ApiClient& client) {
        std::vector<int> codes;
        codes.push_back(client.register_sensor(kMeta, 1, 10, "").status);
        codes.push_back(client.publish(sha256("s"), as_bytes("x"), 0).status);
        codes.push_back(client.subscribe(sha256("st")).status);
        codes.push_back(client.fetch(sha256("e")).status);
        return codes;
    };
    c.set_token("");
    for (int code : try_all(live, c)) EXPECT_EQ(code, 401);
    Bytes raw = from_base64(good);
    raw[raw.size() - 1] ^= 1;
    c.set_token(to_base64(raw));
    for (int code : try_all(live, c)) EXPECT_EQ(code, 401);
    c.set_token(good);
    live.clock += 3601;
    for (int code : try_all(live, c)) EXPECT_EQ(code, 401);

    ASSERT_EQ(c.sign_in().status, 200);
    EXPECT_EQ(c.register_sensor(kMeta, 1, 10, "").status, 201);
}

TEST_P(ApiTest, ErrorStatuses) {
    ts::LiveNode live(GetParam());
    auto owner = live.client("o"), poor = live.client("p");
    ASSERT_EQ(owner.sign_up(market::Role::Owner).status, 201);
    EXPECT_EQ(owner.sign_up(market::Role::Owner).status, 409);
    ASSERT_EQ(poor.sign_up(market::Role::Buyer).status, 201);
    auto reg = owner.register_sensor(kMeta, 500, 10, "");
    ASSERT_EQ(reg.status, 201);
    EXPECT_EQ(poor.subscribe(h(reg.body["stream"], "stream_id")).status, 402);
    EXPECT_EQ(poor.subscribe(sha256("nothing")).status, 404);
    EXPECT_EQ(poor.publish(h(reg.body["sensor"], "sensor_id"), as_bytes("x"), 1).status, 403);
    EXPECT_EQ(owner.post("/sensors", Json{{"name", 1}}).status, 400);
    EXPECT_EQ(owner.get("/ledger/tx/" + sha256("none").hex()).status, 404);
    Bytes big(vault::kMaxPayloadSize + 1, 'a');
    EXPECT_EQ(owner.publish(h(reg.body["sensor"], "sensor_id"), big, 1).status, 413);
    auto m = owner.get("/metrics");
    EXPECT_GT(m.body["rejected"].get<int>(), 0);
}

TEST_P(ApiTest, RestartReproducesReads) {
    ts::LiveNode live(GetParam());
    auto owner = live.client("ro"), buyer = live.client("rb");
    ASSERT_EQ(owner.sign_up(market::Role::Owner).status, 201);
    ASSERT_EQ(buyer.sign_up(market::Role::Buyer).status, 201);
    auto reg = owner.register_sensor(kMeta, 5, 100000, "");
    auto pub = owner.publish(h(reg.body["sensor"], "sensor_id"), as_bytes("abc"), 1);
    auto sub = buyer.subscribe(h(reg.body["stream"], "stream_id"));
    ASSERT_EQ(sub.status, 201);
    auto got = buyer.fetch(h(pub.body, "envelope_id"));
    ASSERT_EQ(got.status, 200);

    std::vector<std::string> paths{"/accounts", "/streams", "/accounts/" + owner.address().hex(),
                                   "/ledger/tx/" + got.tx_header, "/ledger/tx/" + pub.body["commit"]["tx_id"].get<std::string>(),
                                   GetParam() == ledger::LedgerMode::Chain ? "/ledger/blocks?from=0&to=20" : "/ledger/sites"};
    std::vector<std::string> before;
    for (const auto& p : paths) before.push_back(buyer.get(p).body.dump());

    live.restart();
    auto buyer2 = live.client("rb");
    buyer2.set_token(buyer.token());
    for (std::size_t i = 0; i < paths.size(); ++i) EXPECT_EQ(buyer2.get(paths[i]).body.dump(), before[i]) << paths[i];
    auto again = buyer2.fetch(h(pub.body, "envelope_id"));
    ASSERT_EQ(again.status, 200);
    EXPECT_EQ(again.body["payload"], got.body["payload"]);
    EXPECT_EQ(again.body["watermark_tag"], got.body["watermark_tag"]);

    auto loaded = load_ledger(live.config().data_dir, live.config().engine);
    EXPECT_TRUE(loaded.report.valid);
    EXPECT_EQ(replay_market(loaded), *live.node().snapshot()->market);
}

namespace datchain::ledger {
void PrintTo(LedgerMode mode, std::ostream* os) { *os << to_string(mode); }
}  // namespace datchain::ledger

INSTANTIATE_TEST_SUITE_P(Modes, ApiTest, ::testing::Values(ledger::LedgerMode::Chain, ledger::LedgerMode::Tangle),
                         [](const auto& info) { return std::string(ledger::to_string(info.param)); });

TEST(Node, RefusesModeMismatch) {
    ts::TempDir dir;
    NodeConfig c;
    c.data_dir = dir / "n";
    c.engine = consensus::Pow{2};
    { auto n = Node::open(c); }
    c.ledger_mode = ledger::LedgerMode::Tangle;
    EXPECT_THROW(Node::open(c), NodeError);
}
