// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/http_server.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>

#include "datchain/market/actions.hpp"
#include "datchain/service/json.hpp"

namespace datchain::service {

namespace {

constexpr std::uint64_t kMaxPage = 100;

int market_status(market::MarketErrc c) {
    using E = market::MarketErrc;
    switch (c) {
        case E::DuplicateAccount:
        case E::DuplicateSensor:
        case E::DuplicateEnvelope:
        case E::BadSequence: return 409;
        case E::UnknownAccount:
        case E::UnknownSensor:
        case E::UnknownStream:
        case E::UnknownSubscription:
        case E::UnknownEnvelope: return 404;
        case E::InsufficientFunds: return 402;
        case E::NotOwner:
        case E::AccessDenied: return 403;
        case E::BadSignature:
        case E::InvalidAction: return 400;
        case E::StateDivergence: return 500;
    }
    return 500;
}

int vault_status(vault::VaultErrc c) {
    using E = vault::VaultErrc;
    switch (c) {
        case E::PayloadTooLarge: return 413;
        case E::AccessDenied: return 403;
        case E::NotFound:
        case E::UnknownKey: return 404;
        case E::Malformed: return 400;
        default: return 500;
    }
}

int node_status(NodeErrc c) {
    switch (c) {
        case NodeErrc::BadRequest: return 400;
        case NodeErrc::Unauthorized: return 401;
        case NodeErrc::NotFound: return 404;
        case NodeErrc::Conflict: return 409;
        case NodeErrc::Internal: return 500;
    }
    return 500;
}

std::string error_name(const std::exception& e) {
    if (auto* m = dynamic_cast<const market::MarketError*>(&e)) return market::to_string(m->code());
    if (auto* v = dynamic_cast<const vault::VaultError*>(&e)) return vault::to_string(v->code());
    if (auto* n = dynamic_cast<const NodeError*>(&e)) return to_string(n->code());
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const DecodeError*>(&e) ||
        dynamic_cast<const Json::exception*>(&e))
        return "BadRequest";
    return "Internal";
}

void send_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
    Json body = Json::parse(req.body);
    if (!body.is_object()) throw std::invalid_argument("request body must be a JSON object");
    return body;
}

std::optional<std::uint64_t> query_u64(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    const std::string v = req.get_param_value(name);
    char* end = nullptr;
    errno = 0;
    unsigned long long n = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno != 0 || v[0] == '-')
        throw std::invalid_argument(std::string("query parameter ") + name + " must be a non-negative integer");
    return n;
}

Hash path_hash(const httplib::Request& req) {
    try {
        return Hash::from_hex(req.matches[1].str());
    } catch (const std::exception&) {
        throw NodeError(NodeErrc::NotFound, "malformed id");
    }
}

void check_clock(std::int64_t client, std::int64_t server, const char* field) {
    if (client > server + kChallengeWindow || client < server - kChallengeWindow)
        throw std::invalid_argument(std::string(field) + " is too far from server time");
}

ledger::Transaction client_tx(const market::Action& action, const Address& sender, const Json& body) {
    ledger::Transaction tx;
    tx.kind = market::kind_of(action);
    tx.sender = sender;
    tx.sequence = u64_field(body, "sequence");
    tx.payload = market::encode_payload(action);
    tx.signature = signature_field(body, "signature");
    return tx;
}

Json commit_json(const CommitResult& c) { return {{"tx_id", c.tx_id.hex()}, {"location", to_json(c.location)}}; }

}  // namespace

int status_for(const std::exception& e) {
    if (auto* m = dynamic_cast<const market::MarketError*>(&e)) return market_status(m->code());
    if (auto* v = dynamic_cast<const vault::VaultError*>(&e)) return vault_status(v->code());
    if (auto* n = dynamic_cast<const NodeError*>(&e)) return node_status(n->code());
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const DecodeError*>(&e) ||
        dynamic_cast<const Json::exception*>(&e))
        return 400;
    return 500;
}

HttpServer::HttpServer(Node& node) : node_(node), server_(std::make_unique<httplib::Server>()) {
    const unsigned threads = std::max(1u, node.config().http_threads);
    server_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    server_->set_payload_max_length(4 * vault::kMaxPayloadSize);
    install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::start() {
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void HttpServer::stop() {
    server_->stop();
    if (thread_.joinable()) thread_.join();
}

void HttpServer::install_routes() {
    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;
    auto guard = [this](Handler h) {
        return [this, h](const httplib::Request& req, httplib::Response& res) {
            node_.counters().requests.fetch_add(1);
            try {
                h(req, res);
            } catch (const std::exception& e) {
                send_json(res, status_for(e), {{"error", error_name(e)}, {"message", e.what()}});
            }
        };
    };
    auto authed = [this](const httplib::Request& req) {
        const std::string header = req.get_header_value("Authorization");
        const std::string prefix = "Bearer ";
        if (header.compare(0, prefix.size(), prefix) != 0)
            throw NodeError(NodeErrc::Unauthorized, "missing bearer token");
        auto addr = node_.sessions().verify(std::string_view(header).substr(prefix.size()), node_.now());
        if (!addr) throw NodeError(NodeErrc::Unauthorized, "invalid or expired token");
        return *addr;
    };

    server_->Post("/accounts", guard([this](const httplib::Request& req, httplib::Response& res) {
        Json body = parse_body(req);
        market::SignUpAction a;
        a.public_key = public_key_field(body, "public_key");
        a.role = market::parse_role(string_field(body, "role"));
        a.grant = node_.config().initial_grant;
        a.created_at = i64_field(body, "created_at");
        if (a.role == market::Role::Operator) throw std::invalid_argument("operator role is reserved");
        const std::int64_t now = node_.now();
        check_clock(a.created_at, now, "created_at");
        if (!body.contains("sequence")) body["sequence"] = 1;
        const Address addr = address_of(a.public_key);
        auto commit = node_.submit(client_tx(a, addr, body));
        auto snap = node_.snapshot();
        auto token = node_.sessions().issue(addr, now);
        send_json(res, 201,
                  {{"account", to_json(*snap->market->account(addr), *snap->market)},
                   {"token", token.encode()},
                   {"expiry", token.expiry},
                   {"commit", commit_json(commit)}});
    }));

    server_->Post("/sessions", guard([this](const httplib::Request& req, httplib::Response& res) {
        Json body = parse_body(req);
        const Address addr = hash_field(body, "address");
        const std::int64_t ts = i64_field(body, "timestamp");
        const Signature sig = signature_field(body, "signature");
        const std::int64_t now = node_.now();
        auto snap = node_.snapshot();
        const auto* account = snap->market->account(addr);
        if (!account || account->role == market::Role::Operator)
            throw NodeError(NodeErrc::Unauthorized, "unknown account");
        if (ts > now + kChallengeWindow || ts < now - kChallengeWindow)
            throw NodeError(NodeErrc::Unauthorized, "stale challenge");
        if (!verify_signature(account->public_key, as_bytes(session_challenge(addr, ts)), sig))
            throw NodeError(NodeErrc::Unauthorized, "bad challenge signature");
        auto token = node_.sessions().issue(addr, now);
        send_json(res, 200, {{"token", token.encode()}, {"expiry", token.expiry}});
    }));

    server_->Get("/accounts", guard([this](const httplib::Request&, httplib::Response& res) {
        auto snap = node_.snapshot();
        Json out = Json::array();
        for (const auto& [_, a] : snap->market->accounts()) out.push_back(to_json(a, *snap->market));
        send_json(res, 200, {{"accounts", std::move(out)}});
    }));

    server_->Get(R"(/accounts/([0-9a-fA-F]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
        auto snap = node_.snapshot();
        const auto* a = snap->market->account(path_hash(req));
        if (!a) throw market::MarketError(market::MarketErrc::UnknownAccount);
        send_json(res, 200, to_json(*a, *snap->market));
    }));

    server_->Post("/sensors", guard([this, authed](const httplib::Request& req, httplib::Response& res) {
        const Address caller = authed(req);
        Json body = parse_body(req);
        market::RegisterSensorAction a;
        a.metadata = {string_field(body, "name"), string_field(body, "kind"), string_field(body, "unit"),
                      string_field(body, "location")};
        a.price = u64_field(body, "price");
        a.period = u64_field(body, "period");
        a.schema_tag = body.contains("schema_tag") ? string_field(body, "schema_tag") : std::string();
        auto tx = client_tx(a, caller, body);
        auto commit = node_.submit(tx);
        const Hash sensor_id = market::derive_sensor_id(caller, a.metadata, tx.sequence);
        auto snap = node_.snapshot();
        const auto& sensor = snap->market->sensors().at(sensor_id);
        send_json(res, 201,
                  {{"sensor", to_json(sensor)},
                   {"stream", to_json(*snap->market->stream(sensor.stream_id))},
                   {"commit", commit_json(commit)}});
    }));

    server_->Get("/streams", guard([this](const httplib::Request&, httplib::Response& res) {
        auto snap = node_.snapshot();
        Json out = Json::array();
        for (const auto& [_, s] : snap->market->streams()) {
            Json j = to_json(s);
            j["sensor"] = to_json(snap->market->sensors().at(s.sensor_id));
            out.push_back(std::move(j));
        }
        send_json(res, 200, {{"streams", std::move(out)}});
    }));

    server_->Post("/data", guard([this, authed](const httplib::Request& req, httplib::Response& res) {
        const Address caller = authed(req);
        Json body = parse_body(req);
        const Hash sensor_id = hash_field(body, "sensor_id");
        const Bytes payload = base64_field(body, "payload");
        const std::int64_t captured_at = i64_field(body, "captured_at");
        auto r = node_.publish_data(caller, sensor_id, payload, captured_at);
        send_json(res, 201, {{"envelope_id", r.envelope_id.hex()}, {"commit", commit_json(r.commit)}});
    }));

    server_->Post("/subscriptions", guard([this, authed](const httplib::Request& req, httplib::Response& res) {
        const Address caller = authed(req);
        Json body = parse_body(req);
        market::SubscribeAction a{hash_field(body, "stream_id"), i64_field(body, "now")};
        check_clock(a.now, node_.now(), "now");
        auto tx = client_tx(a, caller, body);
        auto commit = node_.submit(tx);
        auto snap = node_.snapshot();
        const auto* sub = snap->market->subscription(market::derive_sub_id(commit.tx_id));
        const auto* account = snap->market->account(caller);
        send_json(res, 201,
                  {{"subscription", to_json(*sub)},
                   {"receipt",
                    {{"tx_id", commit.tx_id.hex()},
                     {"paid", sub->paid},
                     {"balance", account->balance},
                     {"location", to_json(commit.location)}}}});
    }));

    server_->Get(R"(/data/([0-9a-fA-F]+))", guard([this, authed](const httplib::Request& req, httplib::Response& res) {
        const Address caller = authed(req);
        auto r = node_.fetch_data(caller, path_hash(req));
        res.set_header("X-Datchain-Tx", r.commit.tx_id.hex());
        send_json(res, 200,
                  {{"envelope_id", r.delivery.envelope_id.hex()},
                   {"sensor_id", r.sensor_id.hex()},
                   {"captured_at", r.captured_at},
                   {"payload", to_base64(r.delivery.plaintext)},
                   {"watermark_tag", r.delivery.watermark_tag.hex()},
                   {"sub_id", r.delivery.sub_id.hex()},
                   {"commit", commit_json(r.commit)}});
    }));

    server_->Get("/ledger/blocks", guard([this](const httplib::Request& req, httplib::Response& res) {
        auto snap = node_.snapshot();
        if (snap->mode != ledger::LedgerMode::Chain) throw NodeError(NodeErrc::NotFound, "node runs a tangle ledger");
        const std::uint64_t height = snap->chain->height();
        const std::uint64_t from = query_u64(req, "from").value_or(0);
        std::uint64_t to = query_u64(req, "to").value_or(from + kMaxPage - 1);
        to = std::min({to, height, from + kMaxPage - 1});
        Json blocks = Json::array();
        for (std::uint64_t i = from; i <= to && from <= height; ++i) blocks.push_back(to_json(snap->chain->at(i)));
        send_json(res, 200, {{"height", height}, {"head", snap->chain->head_hash().hex()}, {"blocks", std::move(blocks)}});
    }));

    server_->Get("/ledger/sites", guard([this](const httplib::Request& req, httplib::Response& res) {
        auto snap = node_.snapshot();
        if (snap->mode != ledger::LedgerMode::Tangle) throw NodeError(NodeErrc::NotFound, "node runs a chain ledger");
        const auto& order = snap->tangle->order();
        const std::uint64_t offset = query_u64(req, "offset").value_or(0);
        const std::uint64_t limit = std::min(query_u64(req, "limit").value_or(kMaxPage), kMaxPage);
        Json sites = Json::array();
        for (std::uint64_t i = offset; i < order.size() && i < offset + limit; ++i) {
            Json j = to_json(snap->tangle->site(order[i]));
            j["position"] = i;
            sites.push_back(std::move(j));
        }
        Json tips = Json::array();
        for (const auto& t : snap->tangle->tips()) tips.push_back(t.hex());
        send_json(res, 200, {{"size", order.size()}, {"tips", std::move(tips)}, {"sites", std::move(sites)}});
    }));

    server_->Get(R"(/ledger/tx/([0-9a-fA-F]+))", guard([this](const httplib::Request& req, httplib::Response& res) {
        auto snap = node_.snapshot();
        const Hash id = path_hash(req);
        auto tx = snap->transaction(id);
        if (!tx) throw NodeError(NodeErrc::NotFound, "unknown transaction " + id.hex());
        send_json(res, 200, {{"transaction", to_json(*tx)}, {"location", to_json(snap->locations->at(id))}});
    }));

    server_->Get("/metrics", guard([this](const httplib::Request&, httplib::Response& res) {
        auto snap = node_.snapshot();
        const auto& m = *snap->market;
        auto& c = node_.counters();
        send_json(res, 200,
                  {{"ledger_mode", ledger::to_string(snap->mode)},
                   {"engine", consensus::format_config(node_.config().engine)},
                   {"chain_id", node_.config().chain_id},
                   {"operator", node_.operator_address().hex()},
                   {"initial_grant", node_.config().initial_grant},
                   {"ledger_size", snap->ledger_size()},
                   {"state_version", snap->version},
                   {"accounts", m.accounts().size()},
                   {"sensors", m.sensors().size()},
                   {"subscriptions", m.subscriptions().size()},
                   {"envelopes", m.envelopes().size()},
                   {"deliveries", m.deliveries().size()},
                   {"total_supply", m.total_supply()},
                   {"requests", c.requests.load()},
                   {"commits", c.commits.load()},
                   {"rejected", c.rejected.load()},
                   {"server_time", node_.now()}});
    }));
}

}  // namespace datchain::service
