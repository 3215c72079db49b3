// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "datchain/common/bytes.hpp"
#include "datchain/common/codec.hpp"
#include "datchain/crypto/hash.hpp"
#include "datchain/crypto/keys.hpp"

namespace datchain::ledger {

enum class TxKind : std::uint8_t {
    SignUp = 1,
    RegisterSensor = 2,
    CreateStream = 3,  // reserved: RegisterSensor creates the stream atomically
    PublishData = 4,
    Subscribe = 5,
    Transfer = 6,
    Deliver = 7,
};

const char* to_string(TxKind kind);
bool is_known_kind(std::uint8_t raw);

/// A signed marketplace action. The action payload layout per kind is owned
/// by the marketplace; the ledger only relies on SignUp payloads starting
/// with the 32-byte public key of the new account.
struct Transaction {
    TxKind kind = TxKind::Transfer;
    Address sender;
    std::uint64_t sequence = 0;
    Bytes payload;
    Signature signature{};

    /// Canonical body: version ‖ kind ‖ sender ‖ sequence ‖ payload.
    Bytes signing_bytes() const;
    /// SHA-256 of the canonical body.
    Hash id() const;

    void encode(ByteWriter& out) const;
    static Transaction decode(ByteReader& in);

    bool operator==(const Transaction&) const = default;
};

Transaction sign_transaction(TxKind kind, std::uint64_t sequence, Bytes payload, const KeyPair& keys);

/// Public keys of registered accounts, keyed by address.
class KeyRegistry {
public:
    void add(const PublicKey& pk) { keys_[address_of(pk)] = pk; }
    std::optional<PublicKey> lookup(const Address& addr) const;
    bool contains(const Address& addr) const { return keys_.contains(addr); }
    std::size_t size() const { return keys_.size(); }

private:
    std::map<Address, PublicKey> keys_;
};

enum class TxCheck {
    Ok,
    UnknownSender,
    BadSignature,
    /// SignUp payload does not carry a key matching the sender address.
    BadSignUpKey,
};

const char* to_string(TxCheck check);

/// Public key that authenticates `tx`: the embedded key for SignUp, the
/// registered key otherwise.
std::optional<PublicKey> signer_key(const Transaction& tx, const KeyRegistry& registry);

TxCheck check_transaction(const Transaction& tx, const KeyRegistry& registry);

inline bool verify_transaction(const Transaction& tx, const KeyRegistry& registry) {
    return check_transaction(tx, registry) == TxCheck::Ok;
}

}  // namespace datchain::ledger
