// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "datchain/sim/scenario.hpp"

namespace datchain::sim {

struct SimMetrics {
    std::string engine;
    std::string ledger_mode;
    unsigned nodes = 0;
    unsigned byzantine = 0;
    std::uint64_t seed = 0;

    std::uint64_t committed_tx_count = 0;
    std::uint64_t blocks_or_sites = 0;
    std::uint64_t rounds_to_agreement = 0;
    std::uint64_t messages_sent = 0;
    bool divergence_detected = false;
    std::uint64_t wall_ticks = 0;
    /// False when the run hit max_ticks before going idle.
    bool quiescent = false;

    /// Committed transactions per 1000 ticks.
    double throughput() const;
    double messages_per_tx() const;

    bool operator==(const SimMetrics&) const = default;
};

struct SimResult {
    SimMetrics metrics;
    /// Ledger digest per node; zero for Byzantine nodes.
    std::vector<Hash> digests;
    std::vector<bool> honest;
    std::uint64_t delivered = 0;
    std::uint64_t dropped = 0;
};

/// Throws ScenarioInvalid.
SimResult run_scenario(const SimScenario& scenario);

/// Fixed column order; see docs/scenario.md.
std::string metrics_csv_header();
std::string metrics_csv_row(const SimMetrics& m);
std::string metrics_csv(std::span<const SimMetrics> rows);

/// Same load and seed for every engine.
std::vector<SimMetrics> compare_engines(const SimScenario& base, std::span<const consensus::ConsensusConfig> engines);

}  // namespace datchain::sim
