// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/market/actions.hpp"

#include <algorithm>
#include <cstring>

namespace datchain::market {

namespace {

constexpr std::size_t kMaxField = 1024;

Hash read_hash(ByteReader& in) {
    return Hash::from_bytes(in.raw(32));
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

const char* to_string(Role role) {
    switch (role) {
        case Role::Owner: return "owner";
        case Role::Buyer: return "buyer";
        case Role::Both: return "both";
        case Role::Operator: return "operator";
    }
    return "unknown";
}

Role parse_role(std::string_view text) {
    if (text == "owner") return Role::Owner;
    if (text == "buyer") return Role::Buyer;
    if (text == "both") return Role::Both;
    if (text == "operator") return Role::Operator;
    throw std::invalid_argument("unknown role: " + std::string(text));
}

ledger::TxKind kind_of(const Action& action) {
    return std::visit(
        overloaded{
            [](const SignUpAction&) { return ledger::TxKind::SignUp; },
            [](const RegisterSensorAction&) { return ledger::TxKind::RegisterSensor; },
            [](const PublishDataAction&) { return ledger::TxKind::PublishData; },
            [](const SubscribeAction&) { return ledger::TxKind::Subscribe; },
            [](const TransferAction&) { return ledger::TxKind::Transfer; },
            [](const DeliverAction&) { return ledger::TxKind::Deliver; },
        },
        action);
}

Bytes encode_payload(const Action& action) {
    ByteWriter w;
    std::visit(overloaded{
                   [&](const SignUpAction& a) {
                       w.raw(a.public_key).u8(static_cast<std::uint8_t>(a.role)).u64(a.grant).i64(a.created_at);
                   },
                   [&](const RegisterSensorAction& a) {
                       w.str(a.metadata.name).str(a.metadata.kind).str(a.metadata.unit).str(a.metadata.location);
                       w.u64(a.price).u64(a.period).str(a.schema_tag);
                   },
                   [&](const PublishDataAction& a) {
                       w.raw(a.sensor_id.view()).raw(a.envelope_id.view()).i64(a.captured_at);
                   },
                   [&](const SubscribeAction& a) { w.raw(a.stream_id.view()).i64(a.now); },
                   [&](const TransferAction& a) { w.raw(a.to.view()).u64(a.amount); },
                   [&](const DeliverAction& a) {
                       w.raw(a.sub_id.view()).raw(a.envelope_id.view()).raw(a.tag.view()).i64(a.at);
                   },
               },
               action);
    return std::move(w).take();
}

Action decode_action(const ledger::Transaction& tx) {
    ByteReader in(tx.payload);
    Action out;
    switch (tx.kind) {
        case ledger::TxKind::SignUp: {
            SignUpAction a;
            auto pk = in.raw(32);
            std::copy(pk.begin(), pk.end(), a.public_key.begin());
            auto role = in.u8();
            if (role < 1 || role > 4) throw DecodeError("bad role");
            a.role = static_cast<Role>(role);
            a.grant = in.u64();
            a.created_at = in.i64();
            out = a;
            break;
        }
        case ledger::TxKind::RegisterSensor: {
            RegisterSensorAction a;
            a.metadata.name = in.str(kMaxField);
            a.metadata.kind = in.str(kMaxField);
            a.metadata.unit = in.str(kMaxField);
            a.metadata.location = in.str(kMaxField);
            a.price = in.u64();
            a.period = in.u64();
            a.schema_tag = in.str(kMaxField);
            out = a;
            break;
        }
        case ledger::TxKind::PublishData: {
            PublishDataAction a;
            a.sensor_id = read_hash(in);
            a.envelope_id = read_hash(in);
            a.captured_at = in.i64();
            out = a;
            break;
        }
        case ledger::TxKind::Subscribe: {
            SubscribeAction a;
            a.stream_id = read_hash(in);
            a.now = in.i64();
            out = a;
            break;
        }
        case ledger::TxKind::Transfer: {
            TransferAction a;
            a.to = read_hash(in);
            a.amount = in.u64();
            out = a;
            break;
        }
        case ledger::TxKind::Deliver: {
            DeliverAction a;
            a.sub_id = read_hash(in);
            a.envelope_id = read_hash(in);
            a.tag = read_hash(in);
            a.at = in.i64();
            out = a;
            break;
        }
        default:
            throw DecodeError("reserved transaction kind");
    }
    in.expect_done();
    return out;
}

ledger::Transaction make_action_tx(const Action& action, std::uint64_t sequence, const KeyPair& keys) {
    return ledger::sign_transaction(kind_of(action), sequence, encode_payload(action), keys);
}

}  // namespace datchain::market
