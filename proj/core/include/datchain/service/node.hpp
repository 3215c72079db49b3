// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "datchain/common/error.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/ledger/store.hpp"
#include "datchain/market/market.hpp"
#include "datchain/service/config.hpp"
#include "datchain/service/session.hpp"
#include "datchain/tangle/tangle.hpp"
#include "datchain/vault/keyring.hpp"
#include "datchain/vault/store.hpp"
#include "datchain/vault/watermark.hpp"

namespace datchain::service {

enum class NodeErrc {
    BadRequest,
    Unauthorized,
    NotFound,
    Conflict,
    Internal,
};

const char* to_string(NodeErrc code);

using NodeError = CodedError<NodeErrc>;

using Clock = std::function<std::int64_t()>;

/// Wall clock in unix seconds.
std::int64_t system_now();

struct TxLocation {
    /// Block index in chain mode.
    std::optional<std::uint64_t> block_index;
    Hash block_hash;
    /// Site id in tangle mode.
    Hash site_id;
};

/// Immutable view of the node state after some commit. Readers hold one
/// without blocking the writer.
struct NodeSnapshot {
    std::uint64_t version = 0;
    ledger::LedgerMode mode = ledger::LedgerMode::Chain;
    std::shared_ptr<const ledger::ChainState> chain;
    std::shared_ptr<const tangle::TangleState> tangle;
    std::shared_ptr<const market::MarketState> market;
    std::shared_ptr<const std::map<Hash, TxLocation>> locations;

    std::optional<ledger::Transaction> transaction(const Hash& tx_id) const;
    /// Committed record count excluding genesis.
    std::uint64_t ledger_size() const;
};

struct CommitResult {
    Hash tx_id;
    TxLocation location;
};

struct PublishResult {
    Hash envelope_id;
    CommitResult commit;
};

struct FetchResult {
    vault::WatermarkedDelivery delivery;
    Hash sensor_id;
    std::int64_t captured_at = 0;
    CommitResult commit;
};

struct NodeCounters {
    std::atomic<std::uint64_t> requests{0};
    std::atomic<std::uint64_t> commits{0};
    std::atomic<std::uint64_t> rejected{0};
};

/// One DatChain node over a data directory: ledger files, key ring, blob
/// store and node identity. All mutations go through one writer lock and
/// commit one block or site per action.
class Node {
public:
    /// Opens or initialises `config.data_dir`. Replays the ledger and
    /// fails with Internal on verification errors or divergence.
    static std::unique_ptr<Node> open(const NodeConfig& config, Clock clock = system_now);

    ~Node();

    std::shared_ptr<const NodeSnapshot> snapshot() const;

    const NodeConfig& config() const { return config_; }
    Address operator_address() const { return node_keys_.address(); }
    std::int64_t now() const { return clock_(); }
    NodeCounters& counters() { return counters_; }
    const SessionIssuer& sessions() const { return *sessions_; }

    /// Validates a client-signed action against the market and commits it.
    /// Throws MarketError, or NodeError(Internal) for ledger failures.
    CommitResult submit(const ledger::Transaction& tx);

    /// Encrypts and stores the payload, then commits a PublishData record
    /// signed by the node. `caller` must own the sensor.
    PublishResult publish_data(const Address& caller, const Hash& sensor_id, ByteView payload,
                               std::int64_t captured_at);

    /// Decrypts for an active subscriber of the envelope's stream, tags the
    /// copy and commits a Deliver record.
    FetchResult fetch_data(const Address& caller, const Hash& envelope_id);

    /// Active subscription of `buyer` to `stream_id` at `now`, latest expiry
    /// first.
    static std::optional<market::Subscription> active_subscription(const market::MarketState& market,
                                                                   const Address& buyer, const Hash& stream_id,
                                                                   std::int64_t now);

private:
    Node(NodeConfig config, Clock clock, KeyPair node_keys, vault::KeyRing keys);

    void load_or_init();
    CommitResult commit_locked(const ledger::Transaction& tx);
    void publish(std::shared_ptr<const NodeSnapshot> next);

    NodeConfig config_;
    Clock clock_;
    KeyPair node_keys_;
    vault::KeyRing keyring_;
    std::unique_ptr<vault::BlobStore> blobs_;
    std::unique_ptr<ledger::LedgerWriter> writer_;
    std::unique_ptr<SessionIssuer> sessions_;
    NodeCounters counters_;

    std::mutex write_mu_;
    mutable std::mutex snap_mu_;
    std::shared_ptr<const NodeSnapshot> snap_;
    std::uint64_t seed_counter_ = 0;
};

}  // namespace datchain::service
