// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "datchain/common/error.hpp"
#include "datchain/consensus/config.hpp"
#include "datchain/ledger/store.hpp"
#include "datchain/tangle/tangle.hpp"

namespace datchain::sim {

enum class SimErrc { ScenarioInvalid };

const char* to_string(SimErrc code);

using SimError = CodedError<SimErrc>;

struct SimScenario {
    unsigned node_count = 4;
    unsigned byzantine_count = 0;
    consensus::Behavior behavior = consensus::Behavior::Silent;
    consensus::ConsensusConfig engine = consensus::Pow{4};
    ledger::LedgerMode ledger_mode = ledger::LedgerMode::Chain;
    /// Actions submitted per 1000 ticks.
    double tx_rate = 100;
    /// Ticks over which actions are submitted.
    std::uint64_t duration = 1000;
    /// Explicit action count; otherwise tx_rate * duration / 1000.
    std::optional<std::uint64_t> tx_count;
    std::uint64_t min_delay = 1;
    std::uint64_t max_delay = 3;
    double drop_rate = 0.0;
    std::uint64_t seed = 1;
    /// Block production interval for slot-based engines and vote interval
    /// for tangle voting.
    std::uint64_t slot_ticks = 10;
    /// Hash attempts per node per tick under PoW.
    std::uint64_t hash_rate = 16;
    unsigned max_block_txs = 100;
    std::uint64_t max_ticks = 100000;
    tangle::TipStrategy tip_strategy = tangle::TipStrategy::WeightedWalk;
    /// Attachment proof-of-work for tangle sites.
    unsigned attach_bits = 4;

    std::uint64_t action_count() const;
};

/// Throws ScenarioInvalid.
void validate_scenario(const SimScenario& s);

/// `key = value` lines, `#` comments. See docs/scenario.md.
SimScenario parse_scenario(std::string_view text);
SimScenario load_scenario(const std::filesystem::path& path);
std::string format_scenario(const SimScenario& s);

/// Engine spec resolved against a node count: a bare "pbft" takes n from
/// the scenario and the largest tolerable f.
consensus::ConsensusConfig resolve_engine(std::string_view spec, unsigned node_count);

}  // namespace datchain::sim
