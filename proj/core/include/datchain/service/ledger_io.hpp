// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "datchain/ledger/chain.hpp"
#include "datchain/ledger/store.hpp"
#include "datchain/market/market.hpp"
#include "datchain/tangle/tangle.hpp"

namespace datchain::service {

inline constexpr const char* kMetaFileName = "ledger.meta";

/// Deployment parameters stored next to the ledger files.
struct LedgerMeta {
    ledger::LedgerMode mode = ledger::LedgerMode::Chain;
    consensus::ConsensusConfig engine = consensus::Pow{8};
    std::string chain_id = "datchain-local";
};

void write_meta(const std::filesystem::path& dir, const LedgerMeta& meta);
std::optional<LedgerMeta> read_meta(const std::filesystem::path& dir);

struct LoadedLedger {
    ledger::LedgerMode mode = ledger::LedgerMode::Chain;
    std::vector<ledger::Block> blocks;
    std::vector<tangle::TangleSite> sites;
    /// Framing, decoding and full verification. On failure, blocks/sites
    /// hold the records before the first bad one.
    ledger::VerifyReport report;
};

/// Throws std::runtime_error when the directory holds no ledger.
LoadedLedger load_ledger(const std::filesystem::path& dir, const consensus::ConsensusConfig& engine);

/// Committed transactions in ledger order.
std::vector<ledger::Transaction> ledger_transactions(const LoadedLedger& ledger);

/// Replays every committed transaction from an empty market. Throws
/// MarketError(StateDivergence).
market::MarketState replay_market(const LoadedLedger& ledger);

}  // namespace datchain::service
