// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace datchain::service {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long long to_int(std::string_view key, std::string_view v) {
    std::string s(v);
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw std::invalid_argument(std::string(key) + ": not an integer");
    return out;
}

}  // namespace

unsigned attach_difficulty(const consensus::ConsensusConfig& engine) {
    if (const auto* p = std::get_if<consensus::Pow>(&engine)) return p->difficulty_bits;
    return tangle::kDefaultAttachDifficulty;
}

NodeConfig parse_node_config(std::string_view text) {
    NodeConfig c;
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
        if (eq == std::string_view::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(v.substr(0, eq));
        auto val = trim(v.substr(eq + 1));
        if (key == "ledger_mode") c.ledger_mode = ledger::parse_ledger_mode(val);
        else if (key == "engine") c.engine = consensus::parse_config(val);
        else if (key == "data_dir") c.data_dir = std::string(val);
        else if (key == "host") c.host = std::string(val);
        else if (key == "port") {
            auto p = to_int(key, val);
            if (p < 0 || p > 65535) throw std::invalid_argument("port out of range");
            c.port = static_cast<int>(p);
        } else if (key == "initial_grant") {
            auto g = to_int(key, val);
            if (g < 0) throw std::invalid_argument("initial_grant must be non-negative");
            c.initial_grant = static_cast<std::uint64_t>(g);
        } else if (key == "auth_secret") c.auth_secret = std::string(val);
        else if (key == "session_ttl") {
            c.session_ttl = to_int(key, val);
            if (c.session_ttl <= 0) throw std::invalid_argument("session_ttl must be positive");
        } else if (key == "chain_id") c.chain_id = std::string(val);
        else if (key == "tip_strategy") c.tip_strategy = tangle::parse_tip_strategy(val);
        else if (key == "http_threads") {
            auto t = to_int(key, val);
            if (t < 1 || t > 256) throw std::invalid_argument("http_threads out of range");
            c.http_threads = static_cast<unsigned>(t);
        } else throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
    }
    return c;
}

void apply_environment(NodeConfig& config) {
    if (const char* dir = std::getenv("DATCHAIN_DATA_DIR"); dir && *dir) config.data_dir = dir;
}

NodeConfig load_node_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    NodeConfig c = parse_node_config(buf.str());
    apply_environment(c);
    return c;
}

std::string format_node_config(const NodeConfig& c) {
    std::ostringstream os;
    os << "ledger_mode = " << ledger::to_string(c.ledger_mode) << '\n'
       << "engine = " << consensus::format_config(c.engine) << '\n'
       << "data_dir = " << c.data_dir.string() << '\n'
       << "host = " << c.host << '\n'
       << "port = " << c.port << '\n'
       << "initial_grant = " << c.initial_grant << '\n'
       << "session_ttl = " << c.session_ttl << '\n'
       << "chain_id = " << c.chain_id << '\n'
       << "tip_strategy = " << tangle::to_string(c.tip_strategy) << '\n'
       << "http_threads = " << c.http_threads << '\n';
    if (!c.auth_secret.empty()) os << "auth_secret = " << c.auth_secret << '\n';
    return os.str();
}

}  // namespace datchain::service
