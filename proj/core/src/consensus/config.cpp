// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/config.hpp"

#include <charconv>
#include <sstream>

namespace datchain::consensus {

const char* to_string(ConsensusErrc code) {
    switch (code) {
        case ConsensusErrc::InvalidConfig: return "InvalidConfig";
        case ConsensusErrc::Exhausted: return "Exhausted";
        case ConsensusErrc::ClockSkew: return "ClockSkew";
        case ConsensusErrc::EmptySet: return "EmptySet";
        case ConsensusErrc::TooFewValidators: return "TooFewValidators";
    }
    return "Unknown";
}

const char* to_string(Behavior b) {
    switch (b) {
        case Behavior::Honest: return "honest";
        case Behavior::Silent: return "silent";
        case Behavior::VoteNo: return "vote-no";
        case Behavior::Equivocate: return "equivocate";
        case Behavior::MinorityMax: return "minority-max";
    }
    return "unknown";
}

Behavior parse_behavior(std::string_view text) {
    for (auto b : {Behavior::Honest, Behavior::Silent, Behavior::VoteNo, Behavior::Equivocate,
                   Behavior::MinorityMax}) {
        if (text == to_string(b)) return b;
    }
    throw ConsensusError(ConsensusErrc::InvalidConfig, "unknown behavior '" + std::string(text) + "'");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

unsigned to_uint(std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConsensusError(ConsensusErrc::InvalidConfig, "expected integer, got '" + std::string(s) + "'");
    }
    return v;
}

double to_double(std::string_view s) {
    // from_chars for double is unavailable on older libstdc++.
    std::string copy(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(copy, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != copy.size() || copy.empty()) {
        throw ConsensusError(ConsensusErrc::InvalidConfig, "expected number, got '" + copy + "'");
    }
    return v;
}

}  // namespace

std::string engine_name(const ConsensusConfig& config) {
    return std::visit(overloaded{
                          [](const Pow&) { return "pow"; },
                          [](const Pos&) { return "pos"; },
                          [](const DPos&) { return "dpos"; },
                          [](const Pbft&) { return "pbft"; },
                          [](const Rpca&) { return "rpca"; },
                          [](const Fpc&) { return "fpc"; },
                      },
                      config);
}

std::string format_config(const ConsensusConfig& config) {
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const Pow& c) { out << "pow:" << c.difficulty_bits; },
                   [&](const Pos&) { out << "pos"; },
                   [&](const DPos& c) { out << "dpos:" << c.num_delegates; },
                   [&](const Pbft& c) { out << "pbft:" << c.n << ':' << c.f; },
                   [&](const Rpca& c) { out << "rpca:" << c.threshold << ':' << c.max_rounds; },
                   [&](const Fpc& c) {
                       out << "fpc:" << c.k << ':' << c.theta_low << ':' << c.theta_high << ':' << c.ell
                           << ':' << c.max_rounds;
                   },
               },
               config);
    return out.str();
}

ConsensusConfig parse_config(std::string_view text) {
    auto parts = split(text, ':');
    auto name = parts[0];
    auto arg = [&](std::size_t i) -> std::string_view {
        return i < parts.size() ? parts[i] : std::string_view{};
    };
    ConsensusConfig out;
    if (name == "pow") {
        Pow c;
        if (!arg(1).empty()) c.difficulty_bits = to_uint(arg(1));
        if (parts.size() > 2) throw ConsensusError(ConsensusErrc::InvalidConfig, "pow takes one parameter");
        out = c;
    } else if (name == "pos") {
        if (parts.size() > 1) throw ConsensusError(ConsensusErrc::InvalidConfig, "pos takes no parameters");
        out = Pos{};
    } else if (name == "dpos") {
        DPos c;
        if (!arg(1).empty()) c.num_delegates = to_uint(arg(1));
        out = c;
    } else if (name == "pbft") {
        Pbft c;
        if (!arg(1).empty()) c.n = to_uint(arg(1));
        if (!arg(2).empty()) c.f = to_uint(arg(2));
        else if (!arg(1).empty()) c.f = (c.n - 1) / 3;
        out = c;
    } else if (name == "rpca") {
        Rpca c;
        if (!arg(1).empty()) c.threshold = to_double(arg(1));
        if (!arg(2).empty()) c.max_rounds = to_uint(arg(2));
        out = c;
    } else if (name == "fpc") {
        Fpc c;
        if (!arg(1).empty()) c.k = to_uint(arg(1));
        if (!arg(2).empty()) c.theta_low = to_double(arg(2));
        if (!arg(3).empty()) c.theta_high = to_double(arg(3));
        if (!arg(4).empty()) c.ell = to_uint(arg(4));
        if (!arg(5).empty()) c.max_rounds = to_uint(arg(5));
        out = c;
    } else {
        throw ConsensusError(ConsensusErrc::InvalidConfig, "unknown engine '" + std::string(name) + "'");
    }
    validate_config(out);
    return out;
}

std::vector<std::string> validate_config(const ConsensusConfig& config) {
    std::vector<std::string> warnings;
    auto fail = [](const std::string& why) { throw ConsensusError(ConsensusErrc::InvalidConfig, why); };
    std::visit(overloaded{
                   [&](const Pow& c) {
                       if (c.difficulty_bits > 32) fail("pow difficulty_bits must be <= 32");
                   },
                   [&](const Pos&) {},
                   [&](const DPos& c) {
                       if (c.num_delegates < 1) fail("dpos num_delegates must be >= 1");
                   },
                   [&](const Pbft& c) {
                       if (c.n < 1) fail("pbft n must be >= 1");
                       if (c.n < 3 * c.f + 1) {
                           warnings.push_back("pbft n < 3f + 1: liveness is not guaranteed");
                       }
                   },
                   [&](const Rpca& c) {
                       if (!(c.threshold > 0.5 && c.threshold <= 1.0)) fail("rpca threshold must be in (0.5, 1.0]");
                       if (c.max_rounds < 1) fail("rpca max_rounds must be >= 1");
                   },
                   [&](const Fpc& c) {
                       if (c.k < 1) fail("fpc k must be >= 1");
                       if (!(c.theta_low > 0.5 && c.theta_high < 1.0 && c.theta_low <= c.theta_high)) {
                           fail("fpc threshold band must satisfy 0.5 < low <= high < 1.0");
                       }
                       if (c.ell < 1) fail("fpc ell must be >= 1");
                       if (c.max_rounds < 1) fail("fpc max_rounds must be >= 1");
                   },
               },
               config);
    return warnings;
}

}  // namespace datchain::consensus
