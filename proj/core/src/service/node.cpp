// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/node.hpp"

#include <sys/stat.h>

#include <chrono>
#include <fstream>
#include <sstream>

#include "datchain/consensus/pow.hpp"
#include "datchain/crypto/aead.hpp"
#include "datchain/service/ledger_io.hpp"

namespace datchain::service {

namespace fs = std::filesystem;

namespace {

constexpr const char* kNodeKeyFile = "node.key";
constexpr const char* kSessionKeyFile = "session.key";
constexpr const char* kKeyRingFile = "keys.dat";
constexpr const char* kBlobDir = "blobs";

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string s = buf.str();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

void write_secret(const fs::path& p, const std::string& text) {
    {
        std::ofstream out(p, std::ios::trunc);
        out << text << '\n';
        if (!out) throw NodeError(NodeErrc::Internal, "cannot write " + p.string());
    }
    ::chmod(p.c_str(), 0600);
}

/// 32 random bytes kept hex-encoded in `file`, created on first use.
Bytes load_or_create_secret(const fs::path& file) {
    if (fs::exists(file)) {
        Bytes b = from_hex(read_text(file));
        if (b.size() != 32) throw NodeError(NodeErrc::Internal, file.string() + " is malformed");
        return b;
    }
    Bytes b(32);
    random_bytes(b);
    write_secret(file, to_hex(b));
    return b;
}

std::uint64_t seed_of(const Hash& h) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | h.bytes[i];
    return v;
}

}  // namespace

const char* to_string(NodeErrc code) {
    switch (code) {
        case NodeErrc::BadRequest: return "BadRequest";
        case NodeErrc::Unauthorized: return "Unauthorized";
        case NodeErrc::NotFound: return "NotFound";
        case NodeErrc::Conflict: return "Conflict";
        case NodeErrc::Internal: return "Internal";
    }
    return "unknown";
}

std::int64_t system_now() {
    using namespace std::chrono;
    return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

std::optional<ledger::Transaction> NodeSnapshot::transaction(const Hash& tx_id) const {
    auto it = locations->find(tx_id);
    if (it == locations->end()) return std::nullopt;
    if (it->second.block_index) {
        for (const auto& tx : chain->at(*it->second.block_index).transactions)
            if (tx.id() == tx_id) return tx;
        return std::nullopt;
    }
    return tangle->site(it->second.site_id).payload;
}

std::uint64_t NodeSnapshot::ledger_size() const {
    return mode == ledger::LedgerMode::Chain ? chain->height() : tangle->size() - 1;
}

Node::Node(NodeConfig config, Clock clock, KeyPair node_keys, vault::KeyRing keys)
    : config_(std::move(config)), clock_(std::move(clock)), node_keys_(node_keys), keyring_(std::move(keys)) {}

Node::~Node() = default;

std::unique_ptr<Node> Node::open(const NodeConfig& config, Clock clock) {
    fs::create_directories(config.data_dir);
    Seed seed{};
    {
        Bytes s = load_or_create_secret(config.data_dir / kNodeKeyFile);
        std::copy(s.begin(), s.end(), seed.begin());
    }
    auto ring = vault::KeyRing::open(config.data_dir / kKeyRingFile);
    std::unique_ptr<Node> node(new Node(config, std::move(clock), KeyPair::from_seed(seed), std::move(ring)));
    node->blobs_ = std::make_unique<vault::BlobStore>(config.data_dir / kBlobDir);
    Bytes secret = config.auth_secret.empty() ? load_or_create_secret(config.data_dir / kSessionKeyFile)
                                              : to_bytes(config.auth_secret);
    node->sessions_ = std::make_unique<SessionIssuer>(std::move(secret), config.session_ttl);
    node->load_or_init();
    return node;
}

void Node::load_or_init() {
    const fs::path& dir = config_.data_dir;
    auto snap = std::make_shared<NodeSnapshot>();
    snap->mode = config_.ledger_mode;
    auto locations = std::make_shared<std::map<Hash, TxLocation>>();

    if (ledger::ledger_exists(dir)) {
        auto meta = read_meta(dir);
        if (!meta) throw NodeError(NodeErrc::Internal, "ledger.meta missing in " + dir.string());
        if (meta->mode != config_.ledger_mode)
            throw NodeError(NodeErrc::Conflict, std::string("data dir holds a ") + ledger::to_string(meta->mode) +
                                                    " ledger; config asks for " + ledger::to_string(config_.ledger_mode));
        if (consensus::format_config(meta->engine) != consensus::format_config(config_.engine))
            throw NodeError(NodeErrc::Conflict, "data dir was created with engine " + consensus::format_config(meta->engine));
        auto loaded = load_ledger(dir, config_.engine);
        if (!loaded.report.valid)
            throw NodeError(NodeErrc::Internal, "ledger verification failed at record " +
                                                    std::to_string(loaded.report.first_bad_index) + ": " +
                                                    ledger::to_string(loaded.report.reason) + " " + loaded.report.detail);
        if (loaded.mode == ledger::LedgerMode::Chain) {
            ledger::ChainState chain(loaded.blocks.front());
            for (std::size_t i = 1; i < loaded.blocks.size(); ++i) {
                chain = ledger::append_block(std::move(chain), loaded.blocks[i], config_.engine);
                for (const auto& tx : loaded.blocks[i].transactions)
                    (*locations)[tx.id()] = TxLocation{i, loaded.blocks[i].hash, Hash::zero()};
            }
            snap->chain = std::make_shared<ledger::ChainState>(std::move(chain));
        } else {
            tangle::TangleState state;
            for (std::size_t i = 1; i < loaded.sites.size(); ++i) {
                tangle::insert_site(state, loaded.sites[i], attach_difficulty(config_.engine));
                (*locations)[loaded.sites[i].payload->id()] = TxLocation{std::nullopt, Hash::zero(), loaded.sites[i].site_id};
            }
            snap->tangle = std::make_shared<tangle::TangleState>(std::move(state));
        }
        try {
            snap->market = std::make_shared<market::MarketState>(replay_market(loaded));
        } catch (const market::MarketError& e) {
            throw NodeError(NodeErrc::Internal, e.what());
        }
        writer_ = std::make_unique<ledger::LedgerWriter>(dir, config_.ledger_mode);
    } else {
        write_meta(dir, LedgerMeta{config_.ledger_mode, config_.engine, config_.chain_id});
        writer_ = std::make_unique<ledger::LedgerWriter>(dir, config_.ledger_mode);
        if (config_.ledger_mode == ledger::LedgerMode::Chain) {
            auto genesis = ledger::make_genesis(config_.chain_id, 0);
            writer_->append(ledger::RecordType::Block, genesis.encode());
            snap->chain = std::make_shared<ledger::ChainState>(genesis);
        } else {
            writer_->append(ledger::RecordType::Site, tangle::genesis_site().encode());
            snap->tangle = std::make_shared<tangle::TangleState>();
        }
        snap->market = std::make_shared<market::MarketState>();
    }
    snap->locations = locations;
    publish(snap);

    if (!snap_->market->account(operator_address())) {
        std::lock_guard lock(write_mu_);
        market::SignUpAction a{node_keys_.public_key(), market::Role::Operator, 0, now()};
        commit_locked(market::make_action_tx(a, 1, node_keys_));
    }
}

std::shared_ptr<const NodeSnapshot> Node::snapshot() const {
    std::lock_guard lock(snap_mu_);
    return snap_;
}

void Node::publish(std::shared_ptr<const NodeSnapshot> next) {
    std::lock_guard lock(snap_mu_);
    snap_ = std::move(next);
}

CommitResult Node::commit_locked(const ledger::Transaction& tx) {
    auto cur = snapshot();
    auto market = std::make_shared<market::MarketState>(*cur->market);
    try {
        market->validate(tx);
    } catch (const market::MarketError&) {
        counters_.rejected.fetch_add(1);
        throw;
    }

    auto next = std::make_shared<NodeSnapshot>(*cur);
    const Hash tx_id = tx.id();
    TxLocation loc;
    try {
        if (cur->mode == ledger::LedgerMode::Chain) {
            auto block = ledger::make_block(cur->chain->height() + 1, cur->chain->head_hash(), now(), {tx});
            if (const auto* pow = std::get_if<consensus::Pow>(&config_.engine)) {
                auto mined = consensus::pow_mine(block.header, pow->difficulty_bits, std::uint64_t{1} << 40);
                if (!mined) throw NodeError(NodeErrc::Internal, "mining exhausted");
                ledger::set_nonce(block, mined->nonce);
            }
            auto chain = ledger::append_block(*cur->chain, block, config_.engine);
            writer_->append(ledger::RecordType::Block, block.encode());
            loc.block_index = block.index();
            loc.block_hash = block.hash;
            next->chain = std::make_shared<ledger::ChainState>(std::move(chain));
        } else {
            const unsigned bits = attach_difficulty(config_.engine);
            auto site = tangle::make_site(*cur->tangle, tx, config_.tip_strategy, bits, seed_of(tx_id) ^ ++seed_counter_);
            auto state = std::make_shared<tangle::TangleState>(*cur->tangle);
            tangle::insert_site(*state, site, bits);
            writer_->append(ledger::RecordType::Site, site.encode());
            loc.site_id = site.site_id;
            next->tangle = std::move(state);
        }
    } catch (const ledger::LedgerError& e) {
        counters_.rejected.fetch_add(1);
        throw NodeError(NodeErrc::BadRequest, e.what());
    } catch (const tangle::TangleError& e) {
        counters_.rejected.fetch_add(1);
        throw NodeError(NodeErrc::BadRequest, e.what());
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const NodeError*>(&e)) throw;
        throw NodeError(NodeErrc::Internal, e.what());
    }

    market->apply(tx);
    auto locations = std::make_shared<std::map<Hash, TxLocation>>(*cur->locations);
    (*locations)[tx_id] = loc;
    next->market = std::move(market);
    next->locations = std::move(locations);
    next->version = cur->version + 1;
    publish(std::move(next));
    counters_.commits.fetch_add(1);
    return CommitResult{tx_id, loc};
}

CommitResult Node::submit(const ledger::Transaction& tx) {
    std::lock_guard lock(write_mu_);
    return commit_locked(tx);
}

PublishResult Node::publish_data(const Address& caller, const Hash& sensor_id, ByteView payload,
                                 std::int64_t captured_at) {
    std::lock_guard lock(write_mu_);
    auto cur = snapshot();
    auto it = cur->market->sensors().find(sensor_id);
    if (it == cur->market->sensors().end()) throw market::MarketError(market::MarketErrc::UnknownSensor, sensor_id.hex());
    if (it->second.owner != caller) throw market::MarketError(market::MarketErrc::NotOwner);
    auto env = keyring_.seal(it->second.stream_id, payload, captured_at, sensor_id);
    blobs_->store(env);
    market::PublishDataAction a{sensor_id, env.envelope_id, captured_at};
    auto tx = market::make_action_tx(a, cur->market->next_sequence(operator_address()), node_keys_);
    return PublishResult{env.envelope_id, commit_locked(tx)};
}

std::optional<market::Subscription> Node::active_subscription(const market::MarketState& market, const Address& buyer,
                                                              const Hash& stream_id, std::int64_t now) {
    std::optional<market::Subscription> best;
    for (const auto& [_, sub] : market.subscriptions()) {
        if (sub.buyer != buyer || sub.stream_id != stream_id || now < sub.start || now >= sub.expiry) continue;
        if (!best || sub.expiry > best->expiry || (sub.expiry == best->expiry && sub.sub_id < best->sub_id)) best = sub;
    }
    return best;
}

FetchResult Node::fetch_data(const Address& caller, const Hash& envelope_id) {
    std::lock_guard lock(write_mu_);
    auto cur = snapshot();
    const auto& m = *cur->market;
    auto rec = m.envelopes().find(envelope_id);
    if (rec == m.envelopes().end()) throw market::MarketError(market::MarketErrc::UnknownEnvelope, envelope_id.hex());
    const auto& sensor = m.sensors().at(rec->second.sensor_id);
    const std::int64_t t = now();
    auto sub = active_subscription(m, caller, sensor.stream_id, t);
    if (!sub) throw vault::VaultError(vault::VaultErrc::AccessDenied, "no active subscription");
    auto key = keyring_.find(sensor.stream_id);
    if (!key) throw vault::VaultError(vault::VaultErrc::UnknownKey, sensor.stream_id.hex());
    auto envelope = blobs_->fetch(envelope_id);
    auto delivery = vault::deliver(envelope, *sub, *key, keyring_.watermark_master(), t);
    market::DeliverAction a{sub->sub_id, envelope_id, delivery.watermark_tag, t};
    auto tx = market::make_action_tx(a, m.next_sequence(operator_address()), node_keys_);
    FetchResult out;
    out.delivery = std::move(delivery);
    out.sensor_id = rec->second.sensor_id;
    out.captured_at = rec->second.captured_at;
    out.commit = commit_locked(tx);
    return out;
}

}  // namespace datchain::service
