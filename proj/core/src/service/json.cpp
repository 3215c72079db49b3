// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/json.hpp"

#include <stdexcept>

#include "datchain/market/actions.hpp"

namespace datchain::service {

namespace {

const Json& require(const Json& body, const char* name) {
    if (!body.is_object() || !body.contains(name)) throw std::invalid_argument(std::string("missing field ") + name);
    return body.at(name);
}

template <std::size_t N>
std::array<std::uint8_t, N> fixed_base64(const Json& body, const char* name) {
    Bytes raw = base64_field(body, name);
    if (raw.size() != N)
        throw std::invalid_argument(std::string(name) + " must decode to " + std::to_string(N) + " bytes");
    std::array<std::uint8_t, N> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

std::string b64(ByteView v) { return to_base64(v); }

Json action_json(const market::Action& action) {
    return std::visit(
        [](const auto& a) -> Json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, market::SignUpAction>) {
                return {{"public_key", b64(a.public_key)},
                        {"role", market::to_string(a.role)},
                        {"grant", a.grant},
                        {"created_at", a.created_at}};
            } else if constexpr (std::is_same_v<T, market::RegisterSensorAction>) {
                return {{"name", a.metadata.name},   {"kind", a.metadata.kind},
                        {"unit", a.metadata.unit},   {"location", a.metadata.location},
                        {"price", a.price},          {"period", a.period},
                        {"schema_tag", a.schema_tag}};
            } else if constexpr (std::is_same_v<T, market::PublishDataAction>) {
                return {{"sensor_id", a.sensor_id.hex()},
                        {"envelope_id", a.envelope_id.hex()},
                        {"captured_at", a.captured_at}};
            } else if constexpr (std::is_same_v<T, market::SubscribeAction>) {
                return {{"stream_id", a.stream_id.hex()}, {"now", a.now}};
            } else if constexpr (std::is_same_v<T, market::TransferAction>) {
                return {{"to", a.to.hex()}, {"amount", a.amount}};
            } else {
                return {{"sub_id", a.sub_id.hex()},
                        {"envelope_id", a.envelope_id.hex()},
                        {"tag", a.tag.hex()},
                        {"at", a.at}};
            }
        },
        action);
}

}  // namespace

Hash hash_field(const Json& body, const char* name) {
    const Json& v = require(body, name);
    if (!v.is_string()) throw std::invalid_argument(std::string(name) + " must be a hex string");
    return Hash::from_hex(v.get<std::string>());
}

std::string string_field(const Json& body, const char* name) {
    const Json& v = require(body, name);
    if (!v.is_string()) throw std::invalid_argument(std::string(name) + " must be a string");
    return v.get<std::string>();
}

std::uint64_t u64_field(const Json& body, const char* name) {
    const Json& v = require(body, name);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw std::invalid_argument(std::string(name) + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::int64_t i64_field(const Json& body, const char* name) {
    const Json& v = require(body, name);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(name) + " must be an integer");
    return v.get<std::int64_t>();
}

Bytes base64_field(const Json& body, const char* name) {
    return from_base64(string_field(body, name));
}

Signature signature_field(const Json& body, const char* name) { return fixed_base64<64>(body, name); }

PublicKey public_key_field(const Json& body, const char* name) { return fixed_base64<32>(body, name); }

Json to_json(const market::Account& a, const market::MarketState& m) {
    return {{"address", a.address.hex()},
            {"public_key", b64(a.public_key)},
            {"balance", a.balance},
            {"role", market::to_string(a.role)},
            {"created_at", a.created_at},
            {"last_sequence", a.last_sequence},
            {"next_sequence", m.next_sequence(a.address)}};
}

Json to_json(const market::SensorRecord& s) {
    return {{"sensor_id", s.sensor_id.hex()},
            {"owner", s.owner.hex()},
            {"name", s.metadata.name},
            {"kind", s.metadata.kind},
            {"unit", s.metadata.unit},
            {"location", s.metadata.location},
            {"stream_id", s.stream_id.hex()}};
}

Json to_json(const market::Stream& s) {
    return {{"stream_id", s.stream_id.hex()}, {"sensor_id", s.sensor_id.hex()}, {"owner", s.owner.hex()},
            {"price", s.price},               {"period", s.period},             {"schema_tag", s.schema_tag}};
}

Json to_json(const market::Subscription& s) {
    return {{"sub_id", s.sub_id.hex()},
            {"buyer", s.buyer.hex()},
            {"stream_id", s.stream_id.hex()},
            {"start", s.start},
            {"expiry", s.expiry},
            {"watermark_key_id", s.watermark_key_id.hex()},
            {"paid", s.paid},
            {"self_subscribed", s.self_subscribed},
            {"tx_id", s.tx_id.hex()}};
}

Json to_json(const market::EnvelopeRecord& e) {
    return {{"envelope_id", e.envelope_id.hex()},
            {"sensor_id", e.sensor_id.hex()},
            {"captured_at", e.captured_at},
            {"tx_id", e.tx_id.hex()}};
}

Json to_json(const ledger::Transaction& tx) {
    Json out{{"tx_id", tx.id().hex()},
             {"kind", ledger::to_string(tx.kind)},
             {"sender", tx.sender.hex()},
             {"sequence", tx.sequence},
             {"payload", b64(tx.payload)},
             {"signature", b64(tx.signature)}};
    try {
        out["action"] = action_json(market::decode_action(tx));
    } catch (const DecodeError&) {
        out["action"] = nullptr;
    }
    return out;
}

Json to_json(const TxLocation& loc) {
    if (loc.block_index) return {{"block_index", *loc.block_index}, {"block_hash", loc.block_hash.hex()}};
    return {{"site_id", loc.site_id.hex()}};
}

Json to_json(const ledger::Block& b) {
    Json txs = Json::array();
    for (const auto& tx : b.transactions) txs.push_back(to_json(tx));
    return {{"index", b.header.index},
            {"hash", b.hash.hex()},
            {"prev_hash", b.header.prev_hash.hex()},
            {"timestamp", b.header.timestamp},
            {"nonce", b.header.nonce},
            {"tx_root", b.header.tx_root.hex()},
            {"transactions", std::move(txs)}};
}

Json to_json(const tangle::TangleSite& s) {
    return {{"site_id", s.site_id.hex()},
            {"parent_a", s.parent_a.hex()},
            {"parent_b", s.parent_b.hex()},
            {"nonce", s.nonce},
            {"transaction", s.payload ? to_json(*s.payload) : Json(nullptr)}};
}

}  // namespace datchain::service
