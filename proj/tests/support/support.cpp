// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "support.hpp"

#include <unistd.h>

#include <fstream>
#include <map>
#include <sstream>

#include "datchain/consensus/pow.hpp"
#include "datchain/market/actions.hpp"

namespace datchain::test_support {

namespace fs = std::filesystem;

TempDir::TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "datchain-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

KeyPair key(const std::string& label) { return KeyPair::from_seed(seed_from_label(label)); }

std::vector<ledger::Transaction> random_transactions(Rng& rng, std::size_t count, const std::string& label) {
    std::vector<ledger::Transaction> out;
    std::vector<KeyPair> keys;
    std::map<Address, std::uint64_t> seq;
    while (out.size() < count) {
        if (keys.empty() || rng.chance(0.3)) {
            auto k = key(label + "/" + std::to_string(keys.size()));
            market::SignUpAction a{k.public_key(), market::Role::Both, 100, 0};
            out.push_back(market::make_action_tx(a, 1, k));
            seq[k.address()] = 1;
            keys.push_back(k);
        } else {
            const auto& from = keys[rng.below(keys.size())];
            const auto& to = keys[rng.below(keys.size())];
            market::TransferAction a{to.address(), rng.below(10) + 1};
            out.push_back(market::make_action_tx(a, ++seq[from.address()], from));
        }
    }
    return out;
}

std::vector<ledger::Block> random_chain(Rng& rng, std::size_t blocks, unsigned difficulty_bits) {
    std::vector<ledger::Block> chain{ledger::make_genesis("test-chain", 0)};
    auto txs = random_transactions(rng, blocks * 4, "chain-" + std::to_string(rng.next()));
    std::size_t next = 0;
    for (std::size_t i = 1; i <= blocks; ++i) {
        std::size_t take = std::min<std::size_t>(rng.below(5), txs.size() - next);
        std::vector<ledger::Transaction> body(txs.begin() + next, txs.begin() + next + take);
        next += take;
        auto b = ledger::make_block(i, chain.back().hash, static_cast<std::int64_t>(i) * 10, std::move(body));
        if (difficulty_bits > 0) {
            auto mined = consensus::pow_mine(b.header, difficulty_bits, std::uint64_t{1} << 40);
            ledger::set_nonce(b, mined->nonce);
        }
        chain.push_back(std::move(b));
    }
    return chain;
}

tangle::TangleState random_tangle(Rng& rng, std::size_t sites) {
    tangle::TangleState state;
    const std::string label = "dag-" + std::to_string(rng.next());
    for (std::size_t i = 0; i < sites; ++i) {
        const auto& order = state.order();
        tangle::TangleSite s;
        s.parent_a = order[rng.below(order.size())];
        s.parent_b = order[rng.below(order.size())];
        auto k = key(label + "/" + std::to_string(i));
        s.payload = market::make_action_tx(market::SignUpAction{k.public_key(), market::Role::Both, 1, 0}, 1, k);
        s.site_id = tangle::compute_site_id(s.parent_a, s.parent_b, *s.payload, 0);
        tangle::insert_site(state, s, 0);
    }
    return state;
}

std::map<Hash, std::uint64_t> brute_weights(const tangle::TangleState& state) {
    std::map<Hash, std::uint64_t> out;
    for (const auto& id : state.order()) out[id] = 0;
    for (const auto& x : state.order()) {
        std::set<Hash> seen;
        std::vector<Hash> stack{x};
        while (!stack.empty()) {
            Hash cur = stack.back();
            stack.pop_back();
            if (!seen.insert(cur).second) continue;
            const auto& s = state.site(cur);
            if (s.is_genesis()) continue;
            stack.push_back(s.parent_a);
            stack.push_back(s.parent_b);
        }
        for (const auto& a : seen) ++out[a];
    }
    return out;
}

std::set<Hash> brute_tips(const tangle::TangleState& state) {
    std::set<Hash> referenced;
    for (const auto& id : state.order()) {
        const auto& s = state.site(id);
        if (s.is_genesis()) continue;
        referenced.insert(s.parent_a);
        referenced.insert(s.parent_b);
    }
    std::set<Hash> tips;
    for (const auto& id : state.order())
        if (!referenced.contains(id)) tips.insert(id);
    return tips;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace datchain::test_support
