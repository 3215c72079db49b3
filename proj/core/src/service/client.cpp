// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/client.hpp"

#include <httplib.h>

#include <stdexcept>

#include "datchain/service/session.hpp"

namespace datchain::service {

namespace {

ApiResponse wrap(const httplib::Result& r) {
    if (!r) throw std::runtime_error("http error: " + httplib::to_string(r.error()));
    ApiResponse out;
    out.status = r->status;
    out.body = r->body.empty() ? Json() : Json::parse(r->body, nullptr, false);
    out.tx_header = r->get_header_value("X-Datchain-Tx");
    return out;
}

}  // namespace

ApiClient::ApiClient(const std::string& host, int port, KeyPair keys)
    : http_(std::make_unique<httplib::Client>(host, port)), keys_(keys) {
    http_->set_read_timeout(60, 0);
}

ApiClient::~ApiClient() = default;
ApiClient::ApiClient(ApiClient&&) noexcept = default;
ApiClient& ApiClient::operator=(ApiClient&&) noexcept = default;

ApiResponse ApiClient::get(const std::string& path) {
    httplib::Headers h;
    if (!token_.empty()) h.emplace("Authorization", "Bearer " + token_);
    return wrap(http_->Get(path, h));
}

ApiResponse ApiClient::post(const std::string& path, const Json& body) {
    httplib::Headers h;
    if (!token_.empty()) h.emplace("Authorization", "Bearer " + token_);
    return wrap(http_->Post(path, h, body.dump(), "application/json"));
}

std::int64_t ApiClient::server_time() {
    auto r = get("/metrics");
    if (r.status != 200) throw std::runtime_error("GET /metrics failed");
    return r.body.at("server_time").get<std::int64_t>();
}

std::uint64_t ApiClient::next_sequence() {
    auto r = get("/accounts/" + address().hex());
    if (r.status == 404) return 1;
    if (r.status != 200) throw std::runtime_error("GET /accounts failed");
    return r.body.at("next_sequence").get<std::uint64_t>();
}

std::string ApiClient::sign(const market::Action& action, std::uint64_t sequence) const {
    auto tx = market::make_action_tx(action, sequence, keys_);
    return to_base64(tx.signature);
}

ApiResponse ApiClient::sign_up(market::Role role) {
    auto m = get("/metrics");
    if (m.status != 200) throw std::runtime_error("GET /metrics failed");
    market::SignUpAction a{keys_.public_key(), role, m.body.at("initial_grant").get<std::uint64_t>(),
                           m.body.at("server_time").get<std::int64_t>()};
    Json body{{"public_key", to_base64(keys_.public_key())},
              {"role", market::to_string(role)},
              {"created_at", a.created_at},
              {"sequence", 1},
              {"signature", sign(a, 1)}};
    auto r = post("/accounts", body);
    if (r.status == 201) token_ = r.body.at("token").get<std::string>();
    return r;
}

ApiResponse ApiClient::sign_in() {
    const std::int64_t ts = server_time();
    auto sig = keys_.sign(as_bytes(session_challenge(address(), ts)));
    auto r = post("/sessions", {{"address", address().hex()}, {"timestamp", ts}, {"signature", to_base64(sig)}});
    if (r.status == 200) token_ = r.body.at("token").get<std::string>();
    return r;
}

ApiResponse ApiClient::register_sensor(const market::SensorMetadata& metadata, std::uint64_t price,
                                       std::uint64_t period, const std::string& schema_tag) {
    const std::uint64_t seq = next_sequence();
    market::RegisterSensorAction a{metadata, price, period, schema_tag};
    return post("/sensors", {{"name", metadata.name},
                             {"kind", metadata.kind},
                             {"unit", metadata.unit},
                             {"location", metadata.location},
                             {"price", price},
                             {"period", period},
                             {"schema_tag", schema_tag},
                             {"sequence", seq},
                             {"signature", sign(a, seq)}});
}

ApiResponse ApiClient::publish(const Hash& sensor_id, ByteView payload, std::int64_t captured_at) {
    return post("/data", {{"sensor_id", sensor_id.hex()}, {"payload", to_base64(payload)}, {"captured_at", captured_at}});
}

ApiResponse ApiClient::subscribe(const Hash& stream_id) {
    const std::uint64_t seq = next_sequence();
    market::SubscribeAction a{stream_id, server_time()};
    return post("/subscriptions",
                {{"stream_id", stream_id.hex()}, {"now", a.now}, {"sequence", seq}, {"signature", sign(a, seq)}});
}

ApiResponse ApiClient::fetch(const Hash& envelope_id) { return get("/data/" + envelope_id.hex()); }

}  // namespace datchain::service
