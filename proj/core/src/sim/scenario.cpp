// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/sim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "datchain/consensus/pbft.hpp"

namespace datchain::sim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void invalid(const std::string& detail) {
    throw SimError(SimErrc::ScenarioInvalid, detail);
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) invalid(std::string(key) + ": not an integer");
    return out;
}

double to_double(std::string_view key, std::string_view v) {
    std::string s(v);
    std::size_t used = 0;
    double out = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        invalid(std::string(key) + ": not a number");
    }
    if (used != s.size()) invalid(std::string(key) + ": not a number");
    return out;
}

unsigned to_unsigned(std::string_view key, std::string_view v) {
    auto x = to_u64(key, v);
    if (x > 1'000'000) invalid(std::string(key) + ": out of range");
    return static_cast<unsigned>(x);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(SimErrc code) {
    switch (code) {
        case SimErrc::ScenarioInvalid: return "ScenarioInvalid";
    }
    return "unknown";
}

std::uint64_t SimScenario::action_count() const {
    if (tx_count) return *tx_count;
    return static_cast<std::uint64_t>(tx_rate * static_cast<double>(duration) / 1000.0);
}

void validate_scenario(const SimScenario& s) {
    if (s.node_count == 0) invalid("node_count must be positive");
    if (s.byzantine_count >= s.node_count) invalid("byzantine_count must be below node_count");
    if (!(s.drop_rate >= 0.0 && s.drop_rate < 1.0)) invalid("drop_rate must be in [0, 1)");
    if (s.min_delay > s.max_delay) invalid("min_delay exceeds max_delay");
    if (s.slot_ticks == 0) invalid("slot_ticks must be positive");
    if (s.max_block_txs == 0 || s.max_block_txs > ledger::kMaxBlockTransactions) invalid("max_block_txs out of range");
    if (!(s.tx_rate >= 0.0)) invalid("tx_rate must be non-negative");
    if (s.max_ticks == 0) invalid("max_ticks must be positive");
    if (s.attach_bits > 32) invalid("attach_bits out of range");
    if (s.byzantine_count > 0 && s.behavior == consensus::Behavior::Honest) invalid("byzantine behavior is honest");
    try {
        consensus::validate_config(s.engine);
    } catch (const std::exception& e) {
        invalid(e.what());
    }
    if (const auto* p = std::get_if<consensus::Pbft>(&s.engine); p && p->n != s.node_count)
        invalid("pbft n does not match node_count");
    if (const auto* d = std::get_if<consensus::DPos>(&s.engine); d && d->num_delegates > s.node_count)
        invalid("more delegates than nodes");
    if (s.ledger_mode == ledger::LedgerMode::Tangle && s.node_count > 0) {
        if (!std::holds_alternative<consensus::Fpc>(s.engine) && !std::holds_alternative<consensus::Pow>(s.engine))
            invalid("tangle mode runs with fpc or pow");
    }
}

consensus::ConsensusConfig resolve_engine(std::string_view spec, unsigned node_count) {
    consensus::ConsensusConfig cfg;
    try {
        cfg = consensus::parse_config(spec);
    } catch (const std::exception& e) {
        invalid(e.what());
    }
    if (auto* p = std::get_if<consensus::Pbft>(&cfg); p && spec.find(':') == std::string_view::npos) {
        p->n = node_count;
        p->f = consensus::pbft_max_faults(node_count);
    }
    return cfg;
}

SimScenario parse_scenario(std::string_view text) {
    SimScenario s;
    std::string engine_spec;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (v.empty()) continue;
        auto eq = v.find('=');
        if (eq == std::string_view::npos) invalid("line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(v.substr(0, eq));
        auto val = trim(v.substr(eq + 1));
        if (key == "nodes") s.node_count = to_unsigned(key, val);
        else if (key == "byzantine") s.byzantine_count = to_unsigned(key, val);
        else if (key == "behavior") {
            try {
                s.behavior = consensus::parse_behavior(val);
            } catch (const std::exception& e) {
                invalid(e.what());
            }
        } else if (key == "engine") engine_spec = std::string(val);
        else if (key == "ledger_mode") {
            try {
                s.ledger_mode = ledger::parse_ledger_mode(val);
            } catch (const std::exception& e) {
                invalid(e.what());
            }
        } else if (key == "tx_rate") s.tx_rate = to_double(key, val);
        else if (key == "duration") s.duration = to_u64(key, val);
        else if (key == "tx_count") s.tx_count = to_u64(key, val);
        else if (key == "min_delay") s.min_delay = to_u64(key, val);
        else if (key == "max_delay") s.max_delay = to_u64(key, val);
        else if (key == "drop_rate") s.drop_rate = to_double(key, val);
        else if (key == "seed") s.seed = to_u64(key, val);
        else if (key == "slot_ticks") s.slot_ticks = to_u64(key, val);
        else if (key == "hash_rate") s.hash_rate = to_u64(key, val);
        else if (key == "max_block_txs") s.max_block_txs = to_unsigned(key, val);
        else if (key == "max_ticks") s.max_ticks = to_u64(key, val);
        else if (key == "attach_bits") s.attach_bits = to_unsigned(key, val);
        else if (key == "tip_strategy") {
            try {
                s.tip_strategy = tangle::parse_tip_strategy(val);
            } catch (const std::exception& e) {
                invalid(e.what());
            }
        } else invalid("line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
    }
    if (!engine_spec.empty()) s.engine = resolve_engine(engine_spec, s.node_count);
    validate_scenario(s);
    return s;
}

SimScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) invalid("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const SimScenario& s) {
    std::ostringstream os;
    os << "nodes = " << s.node_count << '\n'
       << "byzantine = " << s.byzantine_count << '\n'
       << "behavior = " << consensus::to_string(s.behavior) << '\n'
       << "engine = " << consensus::format_config(s.engine) << '\n'
       << "ledger_mode = " << ledger::to_string(s.ledger_mode) << '\n'
       << "tx_rate = " << format_double(s.tx_rate) << '\n'
       << "duration = " << s.duration << '\n';
    if (s.tx_count) os << "tx_count = " << *s.tx_count << '\n';
    os << "min_delay = " << s.min_delay << '\n'
       << "max_delay = " << s.max_delay << '\n'
       << "drop_rate = " << format_double(s.drop_rate) << '\n'
       << "seed = " << s.seed << '\n'
       << "slot_ticks = " << s.slot_ticks << '\n'
       << "hash_rate = " << s.hash_rate << '\n'
       << "max_block_txs = " << s.max_block_txs << '\n'
       << "max_ticks = " << s.max_ticks << '\n'
       << "tip_strategy = " << tangle::to_string(s.tip_strategy) << '\n'
       << "attach_bits = " << s.attach_bits << '\n';
    return os.str();
}

}  // namespace datchain::sim
