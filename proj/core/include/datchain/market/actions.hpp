// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "datchain/ledger/transaction.hpp"

namespace datchain::market {

/// Operator is the hosting node's own account: it signs ingestion and
/// delivery records. At most one exists.
enum class Role : std::uint8_t { Owner = 1, Buyer = 2, Both = 3, Operator = 4 };

const char* to_string(Role role);
Role parse_role(std::string_view text);

struct SensorMetadata {
    std::string name;
    std::string kind;
    std::string unit;
    std::string location;

    bool operator==(const SensorMetadata&) const = default;
};

// Payload layouts, one per transaction kind. All fields use the canonical
// codec; see docs/formats.md.

struct SignUpAction {
    PublicKey public_key{};
    Role role = Role::Both;
    std::uint64_t grant = 0;
    std::int64_t created_at = 0;
};

struct RegisterSensorAction {
    SensorMetadata metadata;
    std::uint64_t price = 0;
    std::uint64_t period = 0;
    std::string schema_tag;
};

struct PublishDataAction {
    Hash sensor_id;
    Hash envelope_id;
    std::int64_t captured_at = 0;
};

struct SubscribeAction {
    Hash stream_id;
    std::int64_t now = 0;
};

struct TransferAction {
    Address to;
    std::uint64_t amount = 0;
};

struct DeliverAction {
    Hash sub_id;
    Hash envelope_id;
    Hash tag;
    std::int64_t at = 0;
};

using Action = std::variant<SignUpAction, RegisterSensorAction, PublishDataAction, SubscribeAction,
                            TransferAction, DeliverAction>;

ledger::TxKind kind_of(const Action& action);

Bytes encode_payload(const Action& action);

/// Throws DecodeError on malformed payloads or reserved kinds.
Action decode_action(const ledger::Transaction& tx);

ledger::Transaction make_action_tx(const Action& action, std::uint64_t sequence, const KeyPair& keys);

}  // namespace datchain::market
