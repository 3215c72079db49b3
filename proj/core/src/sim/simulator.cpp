// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/sim/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "datchain/common/rng.hpp"
#include "datchain/consensus/fpc.hpp"
#include "datchain/consensus/pbft.hpp"
#include "datchain/consensus/pow.hpp"
#include "datchain/consensus/rpca.hpp"
#include "datchain/consensus/stake.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/market/actions.hpp"
#include "datchain/sim/bus.hpp"

namespace datchain::sim {

namespace {

using consensus::Behavior;
using ledger::Block;
using ledger::ChainState;
using ledger::Transaction;

constexpr Tick kQuiescentTicks = 100;
constexpr std::uint64_t kClientGrant = 100;
constexpr unsigned kMaxClients = 4;
// Stake engines read coin age in days; one tick stands for one hour.
constexpr std::int64_t kSecondsPerTick = 3600;

// Rng sub-streams.
enum Stream : std::uint64_t { kWorkload = 1, kGossip, kConsensusBus, kConsensus, kPlacement, kStake, kTips };

struct WorkItem {
    Tick at = 0;
    NodeId home = 0;
    Hash tx_id;
};

struct ChainNode {
    explicit ChainNode(Block genesis) : chain(std::move(genesis)) {
        heights[chain.head_hash()] = 0;
    }

    ChainState chain;
    std::unordered_map<Hash, std::uint64_t> heights;
    std::multimap<Hash, Hash> orphans;
    std::vector<Hash> pool;
    std::unordered_set<Hash> pool_known;
    std::unordered_set<Hash> in_chain;

    std::optional<Block> pow_template;
    std::uint64_t next_nonce = 0;
};

struct TangleNode {
    tangle::TangleState state;
    std::set<Hash> received;
    std::multimap<Hash, Hash> orphans;
    /// Sites whose parents are present but whose transaction does not
    /// validate yet (sender sign-up still in flight).
    std::vector<Hash> deferred;
    std::set<Hash> rejected;
    /// Local submissions not yet attached.
    std::vector<Hash> outbox;
};

class Simulation {
public:
    explicit Simulation(const SimScenario& s)
        : s_(s),
          root_(s.seed),
          gossip_(LinkModel{s.min_delay, s.max_delay, s.drop_rate}, root_.fork(kGossip).next()),
          cbus_(LinkModel{s.min_delay, s.max_delay, s.drop_rate}, root_.fork(kConsensusBus).next()),
          crng_(root_.fork(kConsensus)),
          trng_(root_.fork(kTips)) {
        assign_behaviors();
        make_workload();
        genesis_ = ledger::make_genesis("datchain-sim", 0);
        if (tangle_mode()) {
            tnodes_.resize(s.node_count);
        } else {
            for (unsigned i = 0; i < s.node_count; ++i) cnodes_.emplace_back(genesis_);
        }
        setup_stake();
    }

    SimResult run();

private:
    bool tangle_mode() const { return s_.ledger_mode == ledger::LedgerMode::Tangle; }
    bool honest(NodeId i) const { return behaviors_[i] == Behavior::Honest; }
    unsigned n() const { return s_.node_count; }

    void assign_behaviors();
    void make_workload();
    void setup_stake();

    // chain mode
    void chain_receive(const Message& m);
    void add_to_pool(NodeId i, const Hash& tx_id);
    void handle_block(NodeId i, const Hash& hash);
    void maybe_switch(NodeId i, const Hash& hash);
    void refresh_chain_view(NodeId i);
    std::vector<Transaction> build_candidate(const ChainNode& node, std::span<const Hash> order) const;
    Block make_candidate_block(NodeId i, Tick t) const;
    void publish_block(NodeId i, Block block);
    bool has_pending(const ChainNode& node) const;
    void step_pow(Tick t);
    void step_slot(Tick t);
    void step_pbft(Tick t);
    void step_rpca(Tick t);

    // tangle mode
    unsigned tangle_bits() const;
    void tangle_receive(const Message& m);
    void tangle_try_place(NodeId i, const Hash& site_id);
    void tangle_insert(NodeId i, const Hash& site_id);
    void tangle_outbox(NodeId i);
    void step_fpc(Tick t);
    bool tangle_pending() const;

    bool pending_work() const;
    Hash digest(NodeId i) const;
    std::uint64_t committed(NodeId i) const;

    SimScenario s_;
    Rng root_;
    MessageBus gossip_;
    MessageBus cbus_;
    Rng crng_;
    Rng trng_;
    std::vector<Behavior> behaviors_;
    Block genesis_;

    std::unordered_map<Hash, Transaction> txs_;
    std::unordered_map<Hash, std::size_t> tx_index_;
    std::vector<WorkItem> work_;
    std::size_t next_work_ = 0;

    std::unordered_map<Hash, Block> blocks_;
    std::vector<ChainNode> cnodes_;

    std::unordered_map<Hash, tangle::TangleSite> sites_;
    std::vector<Hash> published_;
    std::size_t next_vote_ = 0;
    std::vector<TangleNode> tnodes_;

    std::vector<consensus::Validator> validators_;
    std::vector<Address> delegates_;
    std::unordered_map<Address, NodeId> node_of_;

    Tick next_slot_ = 0;
    std::uint64_t rounds_ = 0;
    bool progress_ = false;
};

void Simulation::assign_behaviors() {
    behaviors_.assign(n(), Behavior::Honest);
    std::vector<NodeId> ids(n());
    for (NodeId i = 0; i < n(); ++i) ids[i] = i;
    Rng rng = root_.fork(kPlacement);
    rng.shuffle(std::span<NodeId>(ids));
    for (unsigned b = 0; b < s_.byzantine_count; ++b) behaviors_[ids[b]] = s_.behavior;
}

void Simulation::make_workload() {
    const std::uint64_t count = s_.action_count();
    if (count == 0) return;
    Rng rng = root_.fork(kWorkload);
    const unsigned clients = static_cast<unsigned>(std::min<std::uint64_t>(count, kMaxClients));
    std::vector<KeyPair> keys;
    std::vector<std::uint64_t> seq(clients, 0);
    for (unsigned c = 0; c < clients; ++c) {
        keys.push_back(KeyPair::from_seed(
            seed_from_label("sim-client-" + std::to_string(s_.seed) + "-" + std::to_string(c))));
    }
    std::vector<NodeId> honest_ids;
    for (NodeId i = 0; i < n(); ++i)
        if (honest(i)) honest_ids.push_back(i);

    const Tick span = std::max<Tick>(s_.duration, 1);
    for (std::uint64_t k = 0; k < count; ++k) {
        Transaction tx;
        if (k < clients) {
            market::SignUpAction a{keys[k].public_key(), market::Role::Both, kClientGrant, 0};
            tx = market::make_action_tx(a, ++seq[k], keys[k]);
        } else {
            auto from = static_cast<unsigned>(rng.below(clients));
            auto to = clients == 1 ? from : static_cast<unsigned>((from + 1 + rng.below(clients - 1)) % clients);
            market::TransferAction a{keys[to].address(), 1};
            tx = market::make_action_tx(a, ++seq[from], keys[from]);
        }
        WorkItem item;
        item.at = 1 + k * span / count;
        item.home = honest_ids[rng.below(honest_ids.size())];
        item.tx_id = tx.id();
        tx_index_[item.tx_id] = k;
        txs_.emplace(item.tx_id, std::move(tx));
        work_.push_back(item);
    }
}

void Simulation::setup_stake() {
    Rng rng = root_.fork(kStake);
    for (NodeId i = 0; i < n(); ++i) {
        consensus::Validator v;
        v.id = KeyPair::from_seed(seed_from_label("sim-node-" + std::to_string(s_.seed) + "-" + std::to_string(i)))
                   .address();
        v.coins = 100 + rng.below(900);
        v.held_since = 0;
        v.is_byzantine = !honest(i);
        v.approval_stake = 1 + rng.below(1000);
        node_of_[v.id] = i;
        validators_.push_back(v);
    }
    if (const auto* d = std::get_if<consensus::DPos>(&s_.engine)) {
        delegates_ = consensus::dpos_elect(validators_, d->num_delegates);
    }
}

// ---------------------------------------------------------------- chain mode

void Simulation::add_to_pool(NodeId i, const Hash& tx_id) {
    auto& node = cnodes_[i];
    if (!node.pool_known.insert(tx_id).second) return;
    node.pool.push_back(tx_id);
    progress_ = true;
}

bool Simulation::has_pending(const ChainNode& node) const {
    return std::any_of(node.pool.begin(), node.pool.end(),
                       [&](const Hash& h) { return !node.in_chain.contains(h); });
}

std::vector<Transaction> Simulation::build_candidate(const ChainNode& node, std::span<const Hash> order) const {
    std::vector<Transaction> out;
    std::unordered_map<Address, std::uint64_t> seqs;
    std::unordered_set<Address> signed_up;
    auto last = [&](const Address& a) -> std::uint64_t {
        if (auto it = seqs.find(a); it != seqs.end()) return it->second;
        return node.chain.last_sequence(a).value_or(0);
    };
    for (const auto& id : order) {
        if (out.size() >= s_.max_block_txs) break;
        if (node.in_chain.contains(id)) continue;
        const Transaction& tx = txs_.at(id);
        const bool known = node.chain.registry().contains(tx.sender) || signed_up.contains(tx.sender);
        if (tx.kind == ledger::TxKind::SignUp) {
            if (known) continue;
            signed_up.insert(tx.sender);
        } else if (!known) {
            continue;
        }
        if (tx.sequence != last(tx.sender) + 1) continue;
        seqs[tx.sender] = tx.sequence;
        out.push_back(tx);
    }
    return out;
}

Block Simulation::make_candidate_block(NodeId i, Tick t) const {
    const auto& node = cnodes_[i];
    return ledger::make_block(node.chain.height() + 1, node.chain.head_hash(), static_cast<std::int64_t>(t),
                              build_candidate(node, node.pool));
}

void Simulation::refresh_chain_view(NodeId i) {
    auto& node = cnodes_[i];
    node.in_chain.clear();
    for (std::size_t h = 0; h < node.chain.size(); ++h)
        for (const auto& tx : node.chain.at(h).transactions) node.in_chain.insert(tx.id());
    // Transactions from an abandoned branch return to the pool.
    node.pool.clear();
    for (const auto& id : node.pool_known)
        if (!node.in_chain.contains(id)) node.pool.push_back(id);
    std::sort(node.pool.begin(), node.pool.end(),
              [&](const Hash& a, const Hash& b) { return tx_index_.at(a) < tx_index_.at(b); });
    node.pow_template.reset();
    progress_ = true;
}

void Simulation::maybe_switch(NodeId i, const Hash& hash) {
    auto& node = cnodes_[i];
    const std::uint64_t height = node.heights.at(hash);
    const bool better = height > node.chain.height() || (height == node.chain.height() && hash < node.chain.head_hash());
    if (!better) return;
    const Block& block = blocks_.at(hash);
    try {
        if (block.header.prev_hash == node.chain.head_hash()) {
            node.chain = ledger::append_block(std::move(node.chain), block, s_.engine);
            for (const auto& tx : block.transactions) node.in_chain.insert(tx.id());
            std::erase_if(node.pool, [&](const Hash& id) { return node.in_chain.contains(id); });
            node.pow_template.reset();
            progress_ = true;
            return;
        }
        std::vector<Hash> path;
        for (Hash h = hash; h != genesis_.hash; h = blocks_.at(h).header.prev_hash) path.push_back(h);
        ChainState fresh(genesis_);
        for (auto it = path.rbegin(); it != path.rend(); ++it)
            fresh = ledger::append_block(std::move(fresh), blocks_.at(*it), s_.engine);
        node.chain = std::move(fresh);
        refresh_chain_view(i);
    } catch (const ledger::LedgerError&) {
        node.heights.erase(hash);
    }
}

void Simulation::handle_block(NodeId i, const Hash& hash) {
    auto& node = cnodes_[i];
    if (node.heights.contains(hash)) return;
    const Block& block = blocks_.at(hash);
    auto parent = node.heights.find(block.header.prev_hash);
    if (parent == node.heights.end()) {
        node.orphans.emplace(block.header.prev_hash, hash);
        return;
    }
    node.heights[hash] = parent->second + 1;
    for (const auto& tx : block.transactions) {
        auto id = tx.id();
        if (node.pool_known.insert(id).second) node.pool.push_back(id);
    }
    maybe_switch(i, hash);
    if (!node.heights.contains(hash)) return;
    auto [lo, hi] = node.orphans.equal_range(hash);
    std::vector<Hash> children;
    for (auto it = lo; it != hi; ++it) children.push_back(it->second);
    node.orphans.erase(hash);
    for (const auto& c : children) handle_block(i, c);
}

void Simulation::publish_block(NodeId i, Block block) {
    const Hash hash = block.hash;
    blocks_.emplace(hash, std::move(block));
    handle_block(i, hash);
    gossip_.broadcast(Message{MsgType::BlockAnnounce, i, 0, 0, hash, 0}, n());
    progress_ = true;
}

void Simulation::chain_receive(const Message& m) {
    if (!honest(m.to)) return;
    if (m.type == MsgType::TxAnnounce) {
        add_to_pool(m.to, m.subject);
    } else if (m.type == MsgType::BlockAnnounce) {
        handle_block(m.to, m.subject);
    }
}

void Simulation::step_pow(Tick t) {
    const unsigned bits = std::get<consensus::Pow>(s_.engine).difficulty_bits;
    for (NodeId i = 0; i < n(); ++i) {
        if (!honest(i)) continue;
        auto& node = cnodes_[i];
        if (!node.pow_template) {
            Block b = make_candidate_block(i, t);
            if (b.transactions.empty()) continue;
            node.pow_template = std::move(b);
            node.next_nonce = 0;
        }
        auto found = consensus::pow_mine(node.pow_template->header, bits, s_.hash_rate, node.next_nonce);
        if (!found) {
            node.next_nonce += s_.hash_rate;
            continue;
        }
        Block b = std::move(*node.pow_template);
        node.pow_template.reset();
        ledger::set_nonce(b, found->nonce);
        ++rounds_;
        publish_block(i, std::move(b));
    }
}

void Simulation::step_slot(Tick t) {
    const std::uint64_t slot = t / s_.slot_ticks;
    const std::int64_t now = static_cast<std::int64_t>(t) * kSecondsPerTick;
    NodeId producer = 0;
    if (std::holds_alternative<consensus::Pos>(s_.engine)) {
        producer = node_of_.at(consensus::pos_select_leader(validators_, now));
    } else {
        producer = node_of_.at(consensus::dpos_producer(delegates_, slot));
    }
    bool produced = false;
    if (honest(producer) && has_pending(cnodes_[producer])) {
        Block b = make_candidate_block(producer, t);
        if (!b.transactions.empty()) {
            ++rounds_;
            publish_block(producer, std::move(b));
            produced = true;
        }
    }
    if (std::holds_alternative<consensus::Pos>(s_.engine) && (produced || !honest(producer))) {
        validators_[producer].held_since = now;
    }
}

void Simulation::step_pbft(Tick t) {
    std::vector<NodeId> honest_ids;
    for (NodeId i = 0; i < n(); ++i)
        if (honest(i)) honest_ids.push_back(i);
    bool any = std::any_of(honest_ids.begin(), honest_ids.end(), [&](NodeId i) { return has_pending(cnodes_[i]); });
    if (!any) return;
    NodeId proposer = static_cast<NodeId>((t / s_.slot_ticks) % n());
    if (!honest(proposer)) proposer = honest_ids.front();
    Block b = make_candidate_block(proposer, t);
    if (b.transactions.empty()) return;

    const Tick before = cbus_.now();
    auto outcome = consensus::pbft_round(cbus_, b.hash, behaviors_, crng_);
    rounds_ += outcome.views;
    next_slot_ = t + std::max<Tick>(s_.slot_ticks, cbus_.now() - before);

    const Hash hash = b.hash;
    blocks_.emplace(hash, std::move(b));
    for (NodeId i : honest_ids) {
        const auto& r = outcome.replicas[i];
        if (r.committed && r.value == hash) handle_block(i, hash);
    }
}

void Simulation::step_rpca(Tick t) {
    const auto& cfg = std::get<consensus::Rpca>(s_.engine);
    std::vector<NodeId> honest_ids;
    for (NodeId i = 0; i < n(); ++i)
        if (honest(i)) honest_ids.push_back(i);

    // Candidate set: every pending transaction some honest node holds, in
    // submission order, filtered to a valid block against the reference head.
    std::vector<Hash> union_ids;
    std::unordered_set<Hash> seen;
    for (NodeId i : honest_ids)
        for (const auto& id : cnodes_[i].pool)
            if (!cnodes_[i].in_chain.contains(id) && seen.insert(id).second) union_ids.push_back(id);
    if (union_ids.empty()) return;
    std::sort(union_ids.begin(), union_ids.end(),
              [&](const Hash& a, const Hash& b) { return tx_index_.at(a) < tx_index_.at(b); });
    const auto& ref = cnodes_[honest_ids.front()];
    auto cand_txs = build_candidate(ref, union_ids);
    if (cand_txs.empty()) return;
    std::vector<Hash> candidates;
    for (const auto& tx : cand_txs) candidates.push_back(tx.id());

    std::vector<consensus::RpcaVoter> voters(n());
    for (NodeId i = 0; i < n(); ++i) {
        voters[i].behavior = behaviors_[i];
        voters[i].approves.resize(candidates.size());
        if (!honest(i)) continue;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            voters[i].approves[c] = cnodes_[i].pool_known.contains(candidates[c]);
    }
    const Tick before = cbus_.now();
    auto outcome = consensus::rpca_run(cbus_, voters, candidates, cfg, crng_);
    rounds_ += outcome.rounds;
    next_slot_ = t + std::max<Tick>(s_.slot_ticks, cbus_.now() - before);

    for (NodeId i : honest_ids) {
        const auto& approved = outcome.per_node[i];
        if (approved.empty()) continue;
        auto txs = build_candidate(cnodes_[i], approved);
        if (txs.empty()) continue;
        Block b = ledger::make_block(cnodes_[i].chain.height() + 1, cnodes_[i].chain.head_hash(),
                                     static_cast<std::int64_t>(t), std::move(txs));
        const Hash hash = b.hash;
        blocks_.try_emplace(hash, std::move(b));
        handle_block(i, hash);
    }
}

// --------------------------------------------------------------- tangle mode

unsigned Simulation::tangle_bits() const {
    if (const auto* p = std::get_if<consensus::Pow>(&s_.engine)) return p->difficulty_bits;
    return s_.attach_bits;
}

void Simulation::tangle_insert(NodeId i, const Hash& site_id) {
    auto& node = tnodes_[i];
    try {
        tangle::insert_site(node.state, sites_.at(site_id), tangle_bits());
    } catch (const tangle::TangleError& e) {
        if (e.code() == tangle::TangleErrc::InvalidTransaction) node.deferred.push_back(site_id);
        else node.rejected.insert(site_id);
        return;
    }
    progress_ = true;
    auto [lo, hi] = node.orphans.equal_range(site_id);
    std::vector<Hash> children;
    for (auto it = lo; it != hi; ++it) children.push_back(it->second);
    node.orphans.erase(site_id);
    for (const auto& c : children) tangle_try_place(i, c);

    auto retry = std::move(node.deferred);
    node.deferred.clear();
    for (const auto& d : retry) tangle_insert(i, d);
}

void Simulation::tangle_try_place(NodeId i, const Hash& site_id) {
    auto& node = tnodes_[i];
    if (node.state.contains(site_id) || node.rejected.contains(site_id)) return;
    const auto& site = sites_.at(site_id);
    for (const Hash* p : {&site.parent_a, &site.parent_b}) {
        if (!node.state.contains(*p)) {
            if (node.rejected.contains(*p)) {
                node.rejected.insert(site_id);
                return;
            }
            node.orphans.emplace(*p, site_id);
            return;
        }
    }
    tangle_insert(i, site_id);
}

void Simulation::tangle_receive(const Message& m) {
    if (!honest(m.to) || m.type != MsgType::SiteAnnounce) return;
    auto& node = tnodes_[m.to];
    if (!node.received.insert(m.subject).second) return;
    progress_ = true;
    if (!std::holds_alternative<consensus::Fpc>(s_.engine)) tangle_try_place(m.to, m.subject);
}

void Simulation::tangle_outbox(NodeId i) {
    auto& node = tnodes_[i];
    if (node.outbox.empty()) return;
    std::vector<Hash> keep;
    for (const auto& tx_id : node.outbox) {
        const auto& tx = txs_.at(tx_id);
        if (!ledger::verify_transaction(tx, node.state.registry())) {
            keep.push_back(tx_id);
            continue;
        }
        auto site = tangle::make_site(node.state, tx, s_.tip_strategy, tangle_bits(), trng_.next());
        const Hash id = site.site_id;
        sites_.emplace(id, std::move(site));
        published_.push_back(id);
        node.received.insert(id);
        if (!std::holds_alternative<consensus::Fpc>(s_.engine)) tangle_try_place(i, id);
        gossip_.broadcast(Message{MsgType::SiteAnnounce, i, 0, 0, id, 0}, n());
        progress_ = true;
    }
    node.outbox = std::move(keep);
}

void Simulation::step_fpc(Tick t) {
    const auto& cfg = std::get<consensus::Fpc>(s_.engine);
    // Vote on published sites in order, as long as every honest node has
    // received the next one.
    while (next_vote_ < published_.size()) {
        const Hash id = published_[next_vote_];
        bool everywhere = true;
        for (NodeId i = 0; i < n(); ++i)
            if (honest(i) && !tnodes_[i].received.contains(id)) everywhere = false;
        if (!everywhere) break;
        std::vector<bool> initial(n(), false);
        const auto& site = sites_.at(id);
        for (NodeId i = 0; i < n(); ++i) {
            if (!honest(i)) continue;
            const auto& st = tnodes_[i].state;
            initial[i] = st.contains(site.parent_a) && st.contains(site.parent_b) &&
                         ledger::verify_transaction(*site.payload, st.registry());
        }
        const Tick before = cbus_.now();
        auto outcome = consensus::fpc_run(cbus_, initial, behaviors_, cfg, crng_);
        rounds_ += outcome.rounds;
        next_slot_ = t + std::max<Tick>(s_.slot_ticks, cbus_.now() - before);
        for (NodeId i = 0; i < n(); ++i) {
            if (!honest(i)) continue;
            if (outcome.opinion[i] && initial[i]) tangle_insert(i, id);
            else tnodes_[i].rejected.insert(id);
        }
        ++next_vote_;
        progress_ = true;
    }
}

bool Simulation::tangle_pending() const {
    if (std::holds_alternative<consensus::Fpc>(s_.engine) && next_vote_ < published_.size()) return true;
    for (NodeId i = 0; i < n(); ++i) {
        if (!honest(i)) continue;
        const auto& node = tnodes_[i];
        if (!node.outbox.empty() || !node.deferred.empty() || !node.orphans.empty()) return true;
    }
    return false;
}

// ------------------------------------------------------------------- driver

bool Simulation::pending_work() const {
    if (next_work_ < work_.size()) return true;
    if (gossip_.in_flight() > 0) return true;
    if (tangle_mode()) return tangle_pending();
    for (NodeId i = 0; i < n(); ++i)
        if (honest(i) && has_pending(cnodes_[i])) return true;
    return false;
}

Hash Simulation::digest(NodeId i) const {
    if (!honest(i)) return Hash::zero();
    return tangle_mode() ? tnodes_[i].state.digest() : cnodes_[i].chain.digest();
}

std::uint64_t Simulation::committed(NodeId i) const {
    if (tangle_mode()) return tnodes_[i].state.size() - 1;
    std::uint64_t total = 0;
    for (std::size_t h = 1; h < cnodes_[i].chain.size(); ++h) total += cnodes_[i].chain.at(h).transactions.size();
    return total;
}

SimResult Simulation::run() {
    Tick t = 0;
    Tick idle = 0;
    Tick last_active = 0;
    bool quiescent = false;
    const bool slot_engine = !std::holds_alternative<consensus::Pow>(s_.engine);

    while (t < s_.max_ticks) {
        ++t;
        gossip_.advance(1);
        progress_ = false;

        for (const auto& m : gossip_.deliver_due()) {
            if (tangle_mode()) tangle_receive(m);
            else chain_receive(m);
        }

        while (next_work_ < work_.size() && work_[next_work_].at <= t) {
            const auto& w = work_[next_work_++];
            progress_ = true;
            if (tangle_mode()) {
                tnodes_[w.home].outbox.push_back(w.tx_id);
            } else {
                add_to_pool(w.home, w.tx_id);
                gossip_.broadcast(Message{MsgType::TxAnnounce, w.home, 0, 0, w.tx_id, 0}, n());
            }
        }

        if (tangle_mode()) {
            for (NodeId i = 0; i < n(); ++i)
                if (honest(i)) tangle_outbox(i);
            if (std::holds_alternative<consensus::Fpc>(s_.engine) && t % s_.slot_ticks == 0 && t >= next_slot_)
                step_fpc(t);
        } else if (!slot_engine) {
            step_pow(t);
        } else if (t % s_.slot_ticks == 0 && t >= next_slot_) {
            if (std::holds_alternative<consensus::Pbft>(s_.engine)) step_pbft(t);
            else if (std::holds_alternative<consensus::Rpca>(s_.engine)) step_rpca(t);
            else step_slot(t);
        }

        if (progress_ || pending_work()) {
            idle = 0;
            last_active = t;
        } else if (++idle >= kQuiescentTicks) {
            quiescent = true;
            break;
        }
    }

    SimResult out;
    auto& m = out.metrics;
    m.engine = consensus::format_config(s_.engine);
    m.ledger_mode = ledger::to_string(s_.ledger_mode);
    m.nodes = n();
    m.byzantine = s_.byzantine_count;
    m.seed = s_.seed;
    m.quiescent = quiescent;
    m.wall_ticks = quiescent ? last_active : t;
    m.messages_sent = gossip_.sent() + cbus_.sent();
    m.rounds_to_agreement = rounds_;
    out.delivered = gossip_.delivered() + cbus_.delivered();
    out.dropped = gossip_.dropped() + cbus_.dropped();

    std::optional<NodeId> ref;
    std::optional<Hash> first;
    for (NodeId i = 0; i < n(); ++i) {
        out.honest.push_back(honest(i));
        out.digests.push_back(digest(i));
        if (!honest(i)) continue;
        if (!ref) ref = i;
        if (!first) first = out.digests.back();
        else if (*first != out.digests.back()) m.divergence_detected = true;
    }
    if (ref) {
        m.committed_tx_count = committed(*ref);
        m.blocks_or_sites = tangle_mode() ? tnodes_[*ref].state.size() - 1 : cnodes_[*ref].chain.height();
    }
    return out;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

double SimMetrics::throughput() const {
    return wall_ticks == 0 ? 0.0 : static_cast<double>(committed_tx_count) * 1000.0 / static_cast<double>(wall_ticks);
}

double SimMetrics::messages_per_tx() const {
    return committed_tx_count == 0 ? 0.0 : static_cast<double>(messages_sent) / static_cast<double>(committed_tx_count);
}

SimResult run_scenario(const SimScenario& scenario) {
    validate_scenario(scenario);
    Simulation sim(scenario);
    return sim.run();
}

std::string metrics_csv_header() {
    return "engine,ledger_mode,nodes,byzantine,seed,committed_tx_count,blocks_or_sites,rounds_to_agreement,"
           "messages_sent,divergence_detected,wall_ticks,quiescent,tx_per_1000_ticks,messages_per_tx";
}

std::string metrics_csv_row(const SimMetrics& m) {
    std::string row;
    row += m.engine + ',' + m.ledger_mode + ',' + std::to_string(m.nodes) + ',' + std::to_string(m.byzantine) + ',';
    row += std::to_string(m.seed) + ',' + std::to_string(m.committed_tx_count) + ',';
    row += std::to_string(m.blocks_or_sites) + ',' + std::to_string(m.rounds_to_agreement) + ',';
    row += std::to_string(m.messages_sent) + ',' + (m.divergence_detected ? "true" : "false") + ',';
    row += std::to_string(m.wall_ticks) + ',' + (m.quiescent ? "true" : "false") + ',';
    row += format_fixed(m.throughput()) + ',' + format_fixed(m.messages_per_tx());
    return row;
}

std::string metrics_csv(std::span<const SimMetrics> rows) {
    std::string out = metrics_csv_header() + '\n';
    for (const auto& r : rows) out += metrics_csv_row(r) + '\n';
    return out;
}

std::vector<SimMetrics> compare_engines(const SimScenario& base, std::span<const consensus::ConsensusConfig> engines) {
    std::vector<SimMetrics> rows;
    for (const auto& e : engines) {
        SimScenario s = base;
        s.engine = e;
        if (auto* p = std::get_if<consensus::Pbft>(&s.engine)) {
            p->n = s.node_count;
            p->f = std::min(p->f, consensus::pbft_max_faults(s.node_count));
        }
        if (auto* d = std::get_if<consensus::DPos>(&s.engine)) d->num_delegates = std::min(d->num_delegates, s.node_count);
        if (s.ledger_mode == ledger::LedgerMode::Tangle &&
            !std::holds_alternative<consensus::Fpc>(s.engine) && !std::holds_alternative<consensus::Pow>(s.engine)) {
            s.ledger_mode = ledger::LedgerMode::Chain;
        }
        rows.push_back(run_scenario(s).metrics);
    }
    return rows;
}

}  // namespace datchain::sim
