// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/market/market.hpp"

#include <limits>

namespace datchain::market {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void fail(MarketErrc code, const std::string& detail = {}) {
    throw MarketError(code, detail);
}

void write_metadata(ByteWriter& w, const SensorMetadata& m) {
    w.str(m.name).str(m.kind).str(m.unit).str(m.location);
}

}  // namespace

const char* to_string(MarketErrc code) {
    switch (code) {
        case MarketErrc::DuplicateAccount: return "DuplicateAccount";
        case MarketErrc::UnknownAccount: return "UnknownAccount";
        case MarketErrc::DuplicateSensor: return "DuplicateSensor";
        case MarketErrc::UnknownSensor: return "UnknownSensor";
        case MarketErrc::UnknownStream: return "UnknownStream";
        case MarketErrc::UnknownSubscription: return "UnknownSubscription";
        case MarketErrc::UnknownEnvelope: return "UnknownEnvelope";
        case MarketErrc::DuplicateEnvelope: return "DuplicateEnvelope";
        case MarketErrc::InsufficientFunds: return "InsufficientFunds";
        case MarketErrc::NotOwner: return "NotOwner";
        case MarketErrc::AccessDenied: return "AccessDenied";
        case MarketErrc::BadSequence: return "BadSequence";
        case MarketErrc::BadSignature: return "BadSignature";
        case MarketErrc::InvalidAction: return "InvalidAction";
        case MarketErrc::StateDivergence: return "StateDivergence";
    }
    return "unknown";
}

Hash derive_sensor_id(const Address& owner, const SensorMetadata& metadata, std::uint64_t sequence) {
    ByteWriter w;
    w.raw(owner.view());
    write_metadata(w, metadata);
    w.u64(sequence);
    return sha256(w.data());
}

Hash derive_stream_id(const Hash& sensor_id) {
    return Sha256().update("stream").update(sensor_id).finish();
}

Hash derive_sub_id(const Hash& tx_id) {
    return Sha256().update("sub").update(tx_id).finish();
}

Hash derive_watermark_key_id(const Hash& tx_id) {
    return Sha256().update("wm-key").update(tx_id).finish();
}

const Account* MarketState::account(const Address& a) const {
    auto it = accounts_.find(a);
    return it == accounts_.end() ? nullptr : &it->second;
}

const Stream* MarketState::stream(const Hash& id) const {
    auto it = streams_.find(id);
    return it == streams_.end() ? nullptr : &it->second;
}

const Subscription* MarketState::subscription(const Hash& id) const {
    auto it = subscriptions_.find(id);
    return it == subscriptions_.end() ? nullptr : &it->second;
}

std::uint64_t MarketState::next_sequence(const Address& a) const {
    const auto* acct = account(a);
    return acct ? acct->last_sequence + 1 : 1;
}

void MarketState::validate(const ledger::Transaction& tx) const {
    Action action;
    try {
        action = decode_action(tx);
    } catch (const DecodeError& e) {
        fail(MarketErrc::InvalidAction, e.what());
    }
    check(tx, action);
}

void MarketState::check(const ledger::Transaction& tx, const Action& action) const {
    const Bytes signing = tx.signing_bytes();
    if (const auto* su = std::get_if<SignUpAction>(&action)) {
        if (address_of(su->public_key) != tx.sender) fail(MarketErrc::BadSignature, "sender is not the key address");
        if (!verify_signature(su->public_key, signing, tx.signature)) fail(MarketErrc::BadSignature);
        if (accounts_.contains(tx.sender)) fail(MarketErrc::DuplicateAccount, tx.sender.hex());
        if (su->role == Role::Operator && operator_) fail(MarketErrc::InvalidAction, "operator already registered");
        if (tx.sequence == 0) fail(MarketErrc::BadSequence);
        if (total_supply_ > std::numeric_limits<std::uint64_t>::max() - su->grant)
            fail(MarketErrc::InvalidAction, "grant overflows supply");
        return;
    }

    const Account* sender = account(tx.sender);
    if (!sender) fail(MarketErrc::UnknownAccount, tx.sender.hex());
    if (!verify_signature(sender->public_key, signing, tx.signature)) fail(MarketErrc::BadSignature);
    if (tx.sequence <= sender->last_sequence) fail(MarketErrc::BadSequence);

    std::visit(
        overloaded{
            [](const SignUpAction&) {},
            [&](const RegisterSensorAction& a) {
                if (a.period == 0) fail(MarketErrc::InvalidAction, "period must be positive");
                if (a.period > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
                    fail(MarketErrc::InvalidAction, "period out of range");
                Hash id = derive_sensor_id(tx.sender, a.metadata, tx.sequence);
                if (sensors_.contains(id)) fail(MarketErrc::DuplicateSensor, id.hex());
            },
            [&](const PublishDataAction& a) {
                auto it = sensors_.find(a.sensor_id);
                if (it == sensors_.end()) fail(MarketErrc::UnknownSensor, a.sensor_id.hex());
                if (it->second.owner != tx.sender && operator_ != tx.sender) fail(MarketErrc::NotOwner);
                if (envelopes_.contains(a.envelope_id)) fail(MarketErrc::DuplicateEnvelope, a.envelope_id.hex());
            },
            [&](const SubscribeAction& a) {
                const Stream* s = stream(a.stream_id);
                if (!s) fail(MarketErrc::UnknownStream, a.stream_id.hex());
                if (!accounts_.contains(s->owner)) fail(MarketErrc::UnknownAccount, s->owner.hex());
                if (sender->balance < s->price) fail(MarketErrc::InsufficientFunds);
                if (a.now > std::numeric_limits<std::int64_t>::max() - static_cast<std::int64_t>(s->period))
                    fail(MarketErrc::InvalidAction, "expiry overflows");
            },
            [&](const TransferAction& a) {
                if (!accounts_.contains(a.to)) fail(MarketErrc::UnknownAccount, a.to.hex());
                if (sender->balance < a.amount) fail(MarketErrc::InsufficientFunds);
            },
            [&](const DeliverAction& a) {
                if (operator_ && operator_ != tx.sender) fail(MarketErrc::NotOwner, "deliveries are recorded by the operator");
                const Subscription* sub = subscription(a.sub_id);
                if (!sub) fail(MarketErrc::UnknownSubscription, a.sub_id.hex());
                auto env = envelopes_.find(a.envelope_id);
                if (env == envelopes_.end()) fail(MarketErrc::UnknownEnvelope, a.envelope_id.hex());
                const auto& sensor = sensors_.at(env->second.sensor_id);
                if (sensor.stream_id != sub->stream_id) fail(MarketErrc::AccessDenied, "envelope not on stream");
                if (a.at < sub->start || a.at >= sub->expiry) fail(MarketErrc::AccessDenied, "subscription not active");
            },
        },
        action);
}

void MarketState::mutate(const ledger::Transaction& tx, const Action& action) {
    const Hash tx_id = tx.id();
    std::visit(overloaded{
                   [&](const SignUpAction& a) {
                       Account acct;
                       acct.address = tx.sender;
                       acct.public_key = a.public_key;
                       acct.balance = a.grant;
                       acct.role = a.role;
                       acct.created_at = a.created_at;
                       accounts_.emplace(tx.sender, acct);
                       total_supply_ += a.grant;
                       if (a.role == Role::Operator) operator_ = tx.sender;
                   },
                   [&](const RegisterSensorAction& a) {
                       SensorRecord rec;
                       rec.sensor_id = derive_sensor_id(tx.sender, a.metadata, tx.sequence);
                       rec.owner = tx.sender;
                       rec.metadata = a.metadata;
                       rec.stream_id = derive_stream_id(rec.sensor_id);
                       Stream s;
                       s.stream_id = rec.stream_id;
                       s.sensor_id = rec.sensor_id;
                       s.owner = tx.sender;
                       s.price = a.price;
                       s.period = a.period;
                       s.schema_tag = a.schema_tag;
                       sensors_.emplace(rec.sensor_id, rec);
                       streams_.emplace(s.stream_id, s);
                   },
                   [&](const PublishDataAction& a) {
                       envelopes_.emplace(a.envelope_id, EnvelopeRecord{a.envelope_id, a.sensor_id, a.captured_at, tx_id});
                   },
                   [&](const SubscribeAction& a) {
                       const Stream& s = streams_.at(a.stream_id);
                       Subscription sub;
                       sub.sub_id = derive_sub_id(tx_id);
                       sub.buyer = tx.sender;
                       sub.stream_id = a.stream_id;
                       sub.start = a.now;
                       sub.expiry = a.now + static_cast<std::int64_t>(s.period);
                       sub.watermark_key_id = derive_watermark_key_id(tx_id);
                       sub.paid = s.price;
                       sub.self_subscribed = s.owner == tx.sender;
                       sub.tx_id = tx_id;
                       accounts_.at(tx.sender).balance -= s.price;
                       accounts_.at(s.owner).balance += s.price;
                       subscriptions_.emplace(sub.sub_id, sub);
                   },
                   [&](const TransferAction& a) {
                       accounts_.at(tx.sender).balance -= a.amount;
                       accounts_.at(a.to).balance += a.amount;
                   },
                   [&](const DeliverAction& a) {
                       deliveries_.emplace(tx_id, DeliveryRecord{tx_id, a.sub_id, a.envelope_id, a.tag, a.at});
                   },
               },
               action);
    accounts_.at(tx.sender).last_sequence = tx.sequence;
    applied_.insert(tx_id);
}

bool MarketState::apply(const ledger::Transaction& tx) {
    if (applied_.contains(tx.id())) return false;
    Action action;
    try {
        action = decode_action(tx);
    } catch (const DecodeError& e) {
        fail(MarketErrc::InvalidAction, e.what());
    }
    check(tx, action);
    mutate(tx, action);
    return true;
}

std::uint64_t MarketState::balance_sum() const {
    std::uint64_t sum = 0;
    for (const auto& [_, a] : accounts_) sum += a.balance;
    return sum;
}

Bytes MarketState::serialize() const {
    ByteWriter w;
    w.raw(as_bytes("DCMS")).u32(1);
    w.u64(total_supply_);
    w.u8(operator_ ? 1 : 0);
    if (operator_) w.raw(operator_->view());
    w.u32(static_cast<std::uint32_t>(accounts_.size()));
    for (const auto& [addr, a] : accounts_) {
        w.raw(addr.view()).raw(a.public_key).u64(a.balance).u8(static_cast<std::uint8_t>(a.role));
        w.i64(a.created_at).u64(a.last_sequence);
    }
    w.u32(static_cast<std::uint32_t>(sensors_.size()));
    for (const auto& [id, s] : sensors_) {
        w.raw(id.view()).raw(s.owner.view());
        write_metadata(w, s.metadata);
        w.raw(s.stream_id.view());
    }
    w.u32(static_cast<std::uint32_t>(streams_.size()));
    for (const auto& [id, s] : streams_) {
        w.raw(id.view()).raw(s.sensor_id.view()).raw(s.owner.view()).u64(s.price).u64(s.period).str(s.schema_tag);
    }
    w.u32(static_cast<std::uint32_t>(subscriptions_.size()));
    for (const auto& [id, s] : subscriptions_) {
        w.raw(id.view()).raw(s.buyer.view()).raw(s.stream_id.view()).i64(s.start).i64(s.expiry);
        w.raw(s.watermark_key_id.view()).u64(s.paid).u8(s.self_subscribed ? 1 : 0).raw(s.tx_id.view());
    }
    w.u32(static_cast<std::uint32_t>(envelopes_.size()));
    for (const auto& [id, e] : envelopes_) {
        w.raw(id.view()).raw(e.sensor_id.view()).i64(e.captured_at).raw(e.tx_id.view());
    }
    w.u32(static_cast<std::uint32_t>(deliveries_.size()));
    for (const auto& [id, d] : deliveries_) {
        w.raw(id.view()).raw(d.sub_id.view()).raw(d.envelope_id.view()).raw(d.tag.view()).i64(d.at);
    }
    w.u32(static_cast<std::uint32_t>(applied_.size()));
    for (const auto& id : applied_) w.raw(id.view());
    return std::move(w).take();
}

Hash MarketState::digest() const {
    return sha256(serialize());
}

namespace {

ledger::Transaction submit(MarketState& state, const KeyPair& keys, const Action& action) {
    auto tx = make_action_tx(action, state.next_sequence(keys.address()), keys);
    state.apply(tx);
    return tx;
}

}  // namespace

std::pair<Account, ledger::Transaction> sign_up(MarketState& state, const KeyPair& keys, Role role,
                                                std::uint64_t grant, std::int64_t now) {
    auto tx = submit(state, keys, SignUpAction{keys.public_key(), role, grant, now});
    return {*state.account(keys.address()), tx};
}

std::tuple<SensorRecord, Stream, ledger::Transaction> register_sensor(
    MarketState& state, const KeyPair& owner, const SensorMetadata& metadata, std::uint64_t price,
    std::uint64_t period, const std::string& schema_tag) {
    const std::uint64_t seq = state.next_sequence(owner.address());
    auto tx = submit(state, owner, RegisterSensorAction{metadata, price, period, schema_tag});
    const auto& rec = state.sensors().at(derive_sensor_id(owner.address(), metadata, seq));
    return {rec, *state.stream(rec.stream_id), tx};
}

std::pair<Subscription, ledger::Transaction> subscribe(MarketState& state, const KeyPair& buyer,
                                                       const Hash& stream_id, std::int64_t now) {
    auto tx = submit(state, buyer, SubscribeAction{stream_id, now});
    return {*state.subscription(derive_sub_id(tx.id())), tx};
}

ledger::Transaction transfer(MarketState& state, const KeyPair& from, const Address& to, std::uint64_t amount) {
    return submit(state, from, TransferAction{to, amount});
}

std::pair<EnvelopeRecord, ledger::Transaction> publish_data(MarketState& state, const KeyPair& owner,
                                                            const Hash& sensor_id, const Hash& envelope_id,
                                                            std::int64_t captured_at) {
    auto tx = submit(state, owner, PublishDataAction{sensor_id, envelope_id, captured_at});
    return {state.envelopes().at(envelope_id), tx};
}

ledger::Transaction record_delivery(MarketState& state, const KeyPair& node, const Hash& sub_id,
                                    const Hash& envelope_id, const Hash& tag, std::int64_t at) {
    return submit(state, node, DeliverAction{sub_id, envelope_id, tag, at});
}

void apply_committed(MarketState& state, std::span<const ledger::Transaction> txs) {
    for (const auto& tx : txs) {
        try {
            state.apply(tx);
        } catch (const MarketError& e) {
            throw MarketError(MarketErrc::StateDivergence, tx.id().hex() + ": " + e.what());
        }
    }
}

bool has_access(const MarketState& state, const Address& buyer, const Hash& stream_id, std::int64_t now) {
    for (const auto& [_, sub] : state.subscriptions()) {
        if (sub.buyer == buyer && sub.stream_id == stream_id && sub.start <= now && now < sub.expiry) return true;
    }
    return false;
}

}  // namespace datchain::market
