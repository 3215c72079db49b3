// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/tangle/tangle.hpp"

#include <algorithm>

#include "datchain/common/rng.hpp"

namespace datchain::tangle {

using ledger::Transaction;

namespace {

constexpr std::uint8_t kSiteVersion = 1;

const std::set<Hash> kNoApprovers;

}  // namespace

const char* to_string(TangleErrc code) {
    switch (code) {
        case TangleErrc::InvalidTransaction: return "InvalidTransaction";
        case TangleErrc::Exhausted: return "Exhausted";
        case TangleErrc::UnknownSite: return "UnknownSite";
        case TangleErrc::InvalidParent: return "InvalidParent";
        case TangleErrc::InvalidProof: return "InvalidProof";
        case TangleErrc::BadSiteId: return "BadSiteId";
        case TangleErrc::Duplicate: return "Duplicate";
    }
    return "Unknown";
}

const char* to_string(TipStrategy s) { return s == TipStrategy::Uniform ? "uniform" : "weighted-walk"; }

TipStrategy parse_tip_strategy(std::string_view text) {
    if (text == "uniform") return TipStrategy::Uniform;
    if (text == "weighted-walk") return TipStrategy::WeightedWalk;
    throw std::invalid_argument("tip strategy must be 'uniform' or 'weighted-walk'");
}

Bytes TangleSite::encode() const {
    ByteWriter w;
    w.u8(kSiteVersion).raw(site_id.view()).raw(parent_a.view()).raw(parent_b.view()).u64(nonce);
    w.u8(payload ? 1 : 0);
    if (payload) payload->encode(w);
    return std::move(w).take();
}

TangleSite TangleSite::decode(ByteView data) {
    ByteReader r(data);
    if (r.u8() != kSiteVersion) throw DecodeError("unsupported site version");
    TangleSite s;
    s.site_id = Hash::from_bytes(r.raw(32));
    s.parent_a = Hash::from_bytes(r.raw(32));
    s.parent_b = Hash::from_bytes(r.raw(32));
    s.nonce = r.u64();
    auto has_payload = r.u8();
    if (has_payload > 1) throw DecodeError("bad payload flag");
    if (has_payload) s.payload = Transaction::decode(r);
    r.expect_done();
    return s;
}

Hash compute_site_id(const Hash& parent_a, const Hash& parent_b, const Transaction& payload,
                     std::uint64_t nonce) {
    ByteWriter w;
    w.u8(kSiteVersion).raw(parent_a.view()).raw(parent_b.view());
    payload.encode(w);
    w.u64(nonce);
    return sha256(w.data());
}

TangleSite genesis_site() {
    TangleSite g;
    g.site_id = sha256("datchain-tangle-genesis");
    g.parent_a = g.site_id;
    g.parent_b = g.site_id;
    return g;
}

TangleState::TangleState() {
    auto g = genesis_site();
    tips_.insert(g.site_id);
    order_.push_back(g.site_id);
    sites_.emplace(g.site_id, std::move(g));
}

const TangleSite& TangleState::site(const Hash& id) const {
    auto it = sites_.find(id);
    if (it == sites_.end()) throw TangleError(TangleErrc::UnknownSite, id.hex());
    return it->second;
}

const std::set<Hash>& TangleState::approvers(const Hash& id) const {
    auto it = approvers_.find(id);
    return it == approvers_.end() ? kNoApprovers : it->second;
}

std::optional<Hash> TangleState::site_of_tx(const Hash& tx_id) const {
    auto it = tx_sites_.find(tx_id);
    if (it == tx_sites_.end()) return std::nullopt;
    return it->second;
}

Hash TangleState::digest() const {
    Sha256 h;
    ByteWriter count;
    count.u64(sites_.size());
    h.update(count.data());
    for (const auto& [id, s] : sites_) {
        ByteWriter rec;
        rec.bytes(s.encode());
        h.update(rec.data());
    }
    return h.finish();
}

namespace {

Hash walk_to_tip(const TangleState& state, const std::unordered_map<Hash, std::uint64_t>& weights, Rng& rng) {
    Hash current = state.genesis_id();
    for (;;) {
        const auto& next = state.approvers(current);
        if (next.empty()) return current;
        std::uint64_t total = 0;
        for (const auto& a : next) total += weights.at(a);
        std::uint64_t pick = rng.below(total);
        for (const auto& a : next) {
            auto w = weights.at(a);
            if (pick < w) {
                current = a;
                break;
            }
            pick -= w;
        }
    }
}

}  // namespace

std::pair<Hash, Hash> select_tips(const TangleState& state, TipStrategy strategy, std::uint64_t seed) {
    Rng rng(seed);
    if (strategy == TipStrategy::Uniform) {
        std::vector<Hash> tips(state.tips().begin(), state.tips().end());
        auto a = tips[rng.below(tips.size())];
        auto b = tips[rng.below(tips.size())];
        return {a, b};
    }
    auto weights = all_weights(state);
    auto a = walk_to_tip(state, weights, rng);
    auto b = walk_to_tip(state, weights, rng);
    return {a, b};
}

TangleSite make_site(const TangleState& state, const Transaction& tx, TipStrategy strategy,
                     unsigned difficulty_bits, std::uint64_t seed, std::uint64_t max_iters) {
    if (!ledger::verify_transaction(tx, state.registry())) {
        throw TangleError(TangleErrc::InvalidTransaction, ledger::to_string(ledger::check_transaction(tx, state.registry())));
    }
    auto [a, b] = select_tips(state, strategy, seed);
    TangleSite site;
    site.parent_a = a;
    site.parent_b = b;
    site.payload = tx;
    for (std::uint64_t nonce = 0; nonce < max_iters; ++nonce) {
        auto id = compute_site_id(a, b, tx, nonce);
        if (id.leading_zero_bits() >= difficulty_bits) {
            site.nonce = nonce;
            site.site_id = id;
            return site;
        }
    }
    throw TangleError(TangleErrc::Exhausted, "no nonce within " + std::to_string(max_iters) + " attempts");
}

void insert_site(TangleState& state, const TangleSite& site, unsigned difficulty_bits) {
    if (site.is_genesis()) throw TangleError(TangleErrc::InvalidParent, "genesis cannot be re-attached");
    if (state.contains(site.site_id)) throw TangleError(TangleErrc::Duplicate, site.site_id.hex());
    const auto& tx = *site.payload;
    if (compute_site_id(site.parent_a, site.parent_b, tx, site.nonce) != site.site_id) {
        throw TangleError(TangleErrc::BadSiteId);
    }
    if (!state.contains(site.parent_a) || !state.contains(site.parent_b)) {
        throw TangleError(TangleErrc::InvalidParent, "parent not in tangle");
    }
    if (site.site_id.leading_zero_bits() < difficulty_bits) {
        throw TangleError(TangleErrc::InvalidProof, "attachment proof below " + std::to_string(difficulty_bits) + " bits");
    }
    auto check = ledger::check_transaction(tx, state.registry_);
    if (check != ledger::TxCheck::Ok) throw TangleError(TangleErrc::InvalidTransaction, ledger::to_string(check));
    auto tx_id = tx.id();
    if (state.tx_sites_.contains(tx_id)) throw TangleError(TangleErrc::Duplicate, "transaction already attached");

    state.approvers_[site.parent_a].insert(site.site_id);
    state.approvers_[site.parent_b].insert(site.site_id);
    state.tips_.erase(site.parent_a);
    state.tips_.erase(site.parent_b);
    state.tips_.insert(site.site_id);
    state.order_.push_back(site.site_id);
    state.tx_sites_.emplace(tx_id, site.site_id);
    if (tx.kind == ledger::TxKind::SignUp) state.registry_.add(*ledger::signer_key(tx, state.registry_));
    state.sites_.emplace(site.site_id, site);
}

TangleState attach(TangleState state, const Transaction& tx, TipStrategy strategy, unsigned difficulty_bits,
                   std::uint64_t seed) {
    auto site = make_site(state, tx, strategy, difficulty_bits, seed);
    insert_site(state, site, difficulty_bits);
    return state;
}

std::uint64_t cumulative_weight(const TangleState& state, const Hash& id) {
    if (!state.contains(id)) throw TangleError(TangleErrc::UnknownSite, id.hex());
    std::set<Hash> seen;
    std::vector<Hash> stack{id};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        for (const auto& a : state.approvers(cur)) {
            if (seen.insert(a).second) stack.push_back(a);
        }
    }
    return 1 + seen.size();
}

std::unordered_map<Hash, std::uint64_t> all_weights(const TangleState& state) {
    // Descendant bitsets over insertion positions; children always come
    // after parents, so a reverse sweep sees every approver first.
    const auto& order = state.order();
    const std::size_t n = order.size();
    const std::size_t words = (n + 63) / 64;
    std::unordered_map<Hash, std::size_t> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(order[i], i);

    std::vector<std::uint64_t> bits(n * words, 0);
    std::unordered_map<Hash, std::uint64_t> out;
    out.reserve(n);
    for (std::size_t i = n; i-- > 0;) {
        auto* row = &bits[i * words];
        for (const auto& a : state.approvers(order[i])) {
            auto j = pos.at(a);
            const auto* child = &bits[j * words];
            for (std::size_t w = 0; w < words; ++w) row[w] |= child[w];
            row[j / 64] |= std::uint64_t{1} << (j % 64);
        }
        std::uint64_t count = 0;
        for (std::size_t w = 0; w < words; ++w) count += static_cast<std::uint64_t>(__builtin_popcountll(row[w]));
        out.emplace(order[i], count + 1);
    }
    return out;
}

bool is_confirmed(const TangleState& state, const Hash& id, std::uint64_t weight_threshold) {
    return cumulative_weight(state, id) >= weight_threshold;
}

ledger::VerifyReport verify_sites(std::span<const TangleSite> sites, unsigned difficulty_bits) {
    using ledger::VerifyFailure;
    using ledger::VerifyReport;
    if (sites.empty()) return VerifyReport::bad(0, VerifyFailure::BadGenesis, "empty tangle");
    if (sites[0] != genesis_site()) return VerifyReport::bad(0, VerifyFailure::BadGenesis, "unexpected genesis site");
    TangleState state;
    for (std::size_t i = 1; i < sites.size(); ++i) {
        const auto& s = sites[i];
        if (s.is_genesis()) return VerifyReport::bad(i, VerifyFailure::BadGenesis, "second genesis");
        try {
            insert_site(state, s, difficulty_bits);
        } catch (const TangleError& e) {
            auto why = VerifyFailure::BadTransaction;
            switch (e.code()) {
                case TangleErrc::BadSiteId: why = VerifyFailure::HashMismatch; break;
                case TangleErrc::InvalidParent:
                case TangleErrc::UnknownSite: why = VerifyFailure::LinkBroken; break;
                case TangleErrc::InvalidProof: why = VerifyFailure::InvalidProof; break;
                default: break;
            }
            return VerifyReport::bad(i, why, e.what());
        }
    }
    return VerifyReport::ok();
}

}  // namespace datchain::tangle
