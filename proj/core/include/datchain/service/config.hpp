// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "datchain/consensus/config.hpp"
#include "datchain/ledger/store.hpp"
#include "datchain/tangle/tangle.hpp"

namespace datchain::service {

struct NodeConfig {
    ledger::LedgerMode ledger_mode = ledger::LedgerMode::Chain;
    consensus::ConsensusConfig engine = consensus::Pow{8};
    std::filesystem::path data_dir = "datchain-data";
    std::string host = "127.0.0.1";
    int port = 8080;
    std::uint64_t initial_grant = 100;
    /// HMAC key for session tokens; generated into data_dir/session.key when empty.
    std::string auth_secret;
    std::int64_t session_ttl = 3600;
    std::string chain_id = "datchain-local";
    tangle::TipStrategy tip_strategy = tangle::TipStrategy::WeightedWalk;
    unsigned http_threads = 8;
};

/// `key = value` lines, `#` comments. Throws std::invalid_argument.
NodeConfig parse_node_config(std::string_view text);

/// Reads the file, then applies DATCHAIN_DATA_DIR if set.
NodeConfig load_node_config(const std::filesystem::path& path);

void apply_environment(NodeConfig& config);

std::string format_node_config(const NodeConfig& config);

/// Attachment difficulty for tangle sites under this engine.
unsigned attach_difficulty(const consensus::ConsensusConfig& engine);

}  // namespace datchain::service
