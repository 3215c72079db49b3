// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/ledger/transaction.hpp"

#include <algorithm>

namespace datchain::ledger {

namespace {

constexpr std::uint8_t kTxVersion = 1;

}  // namespace

const char* to_string(TxKind kind) {
    switch (kind) {
        case TxKind::SignUp: return "SignUp";
        case TxKind::RegisterSensor: return "RegisterSensor";
        case TxKind::CreateStream: return "CreateStream";
        case TxKind::PublishData: return "PublishData";
        case TxKind::Subscribe: return "Subscribe";
        case TxKind::Transfer: return "Transfer";
        case TxKind::Deliver: return "Deliver";
    }
    return "Unknown";
}

bool is_known_kind(std::uint8_t raw) { return raw >= 1 && raw <= 7; }

const char* to_string(TxCheck check) {
    switch (check) {
        case TxCheck::Ok: return "ok";
        case TxCheck::UnknownSender: return "UnknownSender";
        case TxCheck::BadSignature: return "BadSignature";
        case TxCheck::BadSignUpKey: return "BadSignUpKey";
    }
    return "unknown";
}

Bytes Transaction::signing_bytes() const {
    ByteWriter w;
    w.u8(kTxVersion).u8(static_cast<std::uint8_t>(kind)).raw(sender.view()).u64(sequence).bytes(payload);
    return std::move(w).take();
}

Hash Transaction::id() const { return sha256(signing_bytes()); }

void Transaction::encode(ByteWriter& out) const {
    out.u8(static_cast<std::uint8_t>(kind))
        .raw(sender.view())
        .u64(sequence)
        .bytes(payload)
        .raw(ByteView{signature.data(), signature.size()});
}

Transaction Transaction::decode(ByteReader& in) {
    Transaction tx;
    auto raw_kind = in.u8();
    if (!is_known_kind(raw_kind)) throw DecodeError("unknown transaction kind");
    tx.kind = static_cast<TxKind>(raw_kind);
    tx.sender = Hash::from_bytes(in.raw(32));
    tx.sequence = in.u64();
    tx.payload = in.bytes(1u << 20);
    auto sig = in.raw(64);
    std::copy(sig.begin(), sig.end(), tx.signature.begin());
    return tx;
}

Transaction sign_transaction(TxKind kind, std::uint64_t sequence, Bytes payload, const KeyPair& keys) {
    Transaction tx;
    tx.kind = kind;
    tx.sender = keys.address();
    tx.sequence = sequence;
    tx.payload = std::move(payload);
    tx.signature = keys.sign(tx.signing_bytes());
    return tx;
}

std::optional<PublicKey> KeyRegistry::lookup(const Address& addr) const {
    auto it = keys_.find(addr);
    if (it == keys_.end()) return std::nullopt;
    return it->second;
}

std::optional<PublicKey> signer_key(const Transaction& tx, const KeyRegistry& registry) {
    if (tx.kind == TxKind::SignUp) {
        if (tx.payload.size() < 32) return std::nullopt;
        PublicKey pk;
        std::copy_n(tx.payload.begin(), 32, pk.begin());
        if (address_of(pk) != tx.sender) return std::nullopt;
        return pk;
    }
    return registry.lookup(tx.sender);
}

TxCheck check_transaction(const Transaction& tx, const KeyRegistry& registry) {
    auto pk = signer_key(tx, registry);
    if (!pk) return tx.kind == TxKind::SignUp ? TxCheck::BadSignUpKey : TxCheck::UnknownSender;
    if (!verify_signature(*pk, tx.signing_bytes(), tx.signature)) return TxCheck::BadSignature;
    return TxCheck::Ok;
}

}  // namespace datchain::ledger
