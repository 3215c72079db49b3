// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "datchain/common/error.hpp"
#include "datchain/market/actions.hpp"

namespace datchain::market {

enum class MarketErrc {
    DuplicateAccount,
    UnknownAccount,
    DuplicateSensor,
    UnknownSensor,
    UnknownStream,
    UnknownSubscription,
    UnknownEnvelope,
    DuplicateEnvelope,
    InsufficientFunds,
    NotOwner,
    AccessDenied,
    BadSequence,
    BadSignature,
    InvalidAction,
    StateDivergence,
};

const char* to_string(MarketErrc code);

using MarketError = CodedError<MarketErrc>;

inline constexpr std::uint64_t kDefaultInitialGrant = 100;

struct Account {
    Address address;
    PublicKey public_key{};
    std::uint64_t balance = 0;
    Role role = Role::Both;
    std::int64_t created_at = 0;
    std::uint64_t last_sequence = 0;

    bool operator==(const Account&) const = default;
};

struct SensorRecord {
    Hash sensor_id;
    Address owner;
    SensorMetadata metadata;
    Hash stream_id;

    bool operator==(const SensorRecord&) const = default;
};

struct Stream {
    Hash stream_id;
    Hash sensor_id;
    Address owner;
    std::uint64_t price = 0;
    std::uint64_t period = 0;
    std::string schema_tag;

    bool operator==(const Stream&) const = default;
};

struct Subscription {
    Hash sub_id;
    Address buyer;
    Hash stream_id;
    std::int64_t start = 0;
    std::int64_t expiry = 0;
    Hash watermark_key_id;
    std::uint64_t paid = 0;
    /// Buyer is the stream owner.
    bool self_subscribed = false;
    Hash tx_id;

    bool operator==(const Subscription&) const = default;
};

struct EnvelopeRecord {
    Hash envelope_id;
    Hash sensor_id;
    std::int64_t captured_at = 0;
    Hash tx_id;

    bool operator==(const EnvelopeRecord&) const = default;
};

struct DeliveryRecord {
    Hash tx_id;
    Hash sub_id;
    Hash envelope_id;
    Hash tag;
    std::int64_t at = 0;

    bool operator==(const DeliveryRecord&) const = default;
};

Hash derive_sensor_id(const Address& owner, const SensorMetadata& metadata, std::uint64_t sequence);
Hash derive_stream_id(const Hash& sensor_id);
Hash derive_sub_id(const Hash& tx_id);
Hash derive_watermark_key_id(const Hash& tx_id);

class MarketState {
public:
    const std::map<Address, Account>& accounts() const { return accounts_; }
    const std::map<Hash, SensorRecord>& sensors() const { return sensors_; }
    const std::map<Hash, Stream>& streams() const { return streams_; }
    const std::map<Hash, Subscription>& subscriptions() const { return subscriptions_; }
    const std::map<Hash, EnvelopeRecord>& envelopes() const { return envelopes_; }
    const std::map<Hash, DeliveryRecord>& deliveries() const { return deliveries_; }
    const std::set<Hash>& applied() const { return applied_; }
    std::uint64_t total_supply() const { return total_supply_; }
    const std::optional<Address>& operator_address() const { return operator_; }

    const Account* account(const Address& a) const;
    const Stream* stream(const Hash& id) const;
    const Subscription* subscription(const Hash& id) const;

    /// Next sequence number the account should sign with; 1 for unknown.
    std::uint64_t next_sequence(const Address& a) const;

    /// Full validation, including the signature. Throws MarketError and
    /// leaves the state untouched.
    void validate(const ledger::Transaction& tx) const;

    /// validate() then mutate. A tx already applied is skipped and false is
    /// returned.
    bool apply(const ledger::Transaction& tx);

    std::uint64_t balance_sum() const;

    /// Deterministic byte serialization of the whole state.
    Bytes serialize() const;
    Hash digest() const;

    bool operator==(const MarketState&) const = default;

private:
    void check(const ledger::Transaction& tx, const Action& action) const;
    void mutate(const ledger::Transaction& tx, const Action& action);

    std::map<Address, Account> accounts_;
    std::map<Hash, SensorRecord> sensors_;
    std::map<Hash, Stream> streams_;
    std::map<Hash, Subscription> subscriptions_;
    std::map<Hash, EnvelopeRecord> envelopes_;
    std::map<Hash, DeliveryRecord> deliveries_;
    std::set<Hash> applied_;
    std::uint64_t total_supply_ = 0;
    std::optional<Address> operator_;
};

// Submission-side helpers: build and sign the action transaction, apply it to
// `state`, and return the effect. Throw MarketError with `state` unchanged.

std::pair<Account, ledger::Transaction> sign_up(MarketState& state, const KeyPair& keys, Role role,
                                                std::uint64_t grant, std::int64_t now);

std::tuple<SensorRecord, Stream, ledger::Transaction> register_sensor(
    MarketState& state, const KeyPair& owner, const SensorMetadata& metadata, std::uint64_t price,
    std::uint64_t period, const std::string& schema_tag);

std::pair<Subscription, ledger::Transaction> subscribe(MarketState& state, const KeyPair& buyer,
                                                       const Hash& stream_id, std::int64_t now);

ledger::Transaction transfer(MarketState& state, const KeyPair& from, const Address& to, std::uint64_t amount);

std::pair<EnvelopeRecord, ledger::Transaction> publish_data(MarketState& state, const KeyPair& owner,
                                                            const Hash& sensor_id, const Hash& envelope_id,
                                                            std::int64_t captured_at);

ledger::Transaction record_delivery(MarketState& state, const KeyPair& node, const Hash& sub_id,
                                    const Hash& envelope_id, const Hash& tag, std::int64_t at);

/// Authoritative replay of committed transactions in ledger order. Any
/// validation failure is reported as StateDivergence.
void apply_committed(MarketState& state, std::span<const ledger::Transaction> txs);

/// True iff `buyer` holds a subscription to `stream_id` with
/// start <= now < expiry.
bool has_access(const MarketState& state, const Address& buyer, const Hash& stream_id, std::int64_t now);

}  // namespace datchain::market
