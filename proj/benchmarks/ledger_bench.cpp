// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include "datchain/consensus/pow.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/market/actions.hpp"
#include "datchain/tangle/tangle.hpp"

using namespace datchain;

namespace {

ledger::Transaction signup_tx(std::size_t i) {
    auto k = KeyPair::from_seed(seed_from_label("bench/" + std::to_string(i)));
    return market::make_action_tx(market::SignUpAction{k.public_key(), market::Role::Both, 100, 0}, 1, k);
}

std::vector<ledger::Block> chain_of(std::size_t blocks, std::size_t txs_per_block) {
    std::vector<ledger::Block> out{ledger::make_genesis("bench", 0)};
    std::size_t n = 0;
    for (std::size_t b = 1; b <= blocks; ++b) {
        std::vector<ledger::Transaction> txs;
        for (std::size_t t = 0; t < txs_per_block; ++t) txs.push_back(signup_tx(n++));
        out.push_back(ledger::make_block(b, out.back().hash, static_cast<std::int64_t>(b), std::move(txs)));
    }
    return out;
}

}  // namespace

static void BM_PowMine(benchmark::State& state) {
    const auto bits = static_cast<unsigned>(state.range(0));
    ledger::BlockHeader h;
    std::uint64_t attempts = 0;
    for (auto _ : state) {
        ++h.index;
        attempts += consensus::pow_mine(h, bits, std::uint64_t{1} << 40)->attempts;
    }
    state.counters["attempts"] = benchmark::Counter(static_cast<double>(attempts), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_PowMine)->Arg(8)->Arg(12)->Arg(16);

static void BM_VerifyBlocks(benchmark::State& state) {
    auto blocks = chain_of(static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(ledger::verify_blocks(blocks));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyBlocks)->Arg(10)->Arg(100);

static void BM_TangleAttach(benchmark::State& state) {
    const auto strategy = state.range(0) == 0 ? tangle::TipStrategy::Uniform : tangle::TipStrategy::WeightedWalk;
    std::vector<ledger::Transaction> txs;
    for (std::size_t i = 0; i < 200; ++i) txs.push_back(signup_tx(i));
    for (auto _ : state) {
        auto t = tangle::tangle_genesis();
        for (std::size_t i = 0; i < txs.size(); ++i) t = tangle::attach(std::move(t), txs[i], strategy, 0, i);
        benchmark::DoNotOptimize(t);
    }
    state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_TangleAttach)->Arg(0)->Arg(1);

static void BM_TangleWeights(benchmark::State& state) {
    auto t = tangle::tangle_genesis();
    for (std::int64_t i = 0; i < state.range(0); ++i)
        t = tangle::attach(std::move(t), signup_tx(static_cast<std::size_t>(i)), tangle::TipStrategy::Uniform, 0,
                           static_cast<std::uint64_t>(i));
    for (auto _ : state) benchmark::DoNotOptimize(tangle::all_weights(t));
}
BENCHMARK(BM_TangleWeights)->Arg(200)->Arg(2000);
