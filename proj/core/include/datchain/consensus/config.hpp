// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "datchain/common/error.hpp"

namespace datchain::consensus {

enum class ConsensusErrc {
    InvalidConfig,
    Exhausted,
    ClockSkew,
    EmptySet,
    TooFewValidators,
};

const char* to_string(ConsensusErrc code);

using ConsensusError = CodedError<ConsensusErrc>;

struct Pow {
    unsigned difficulty_bits = 0;  // 0..32
};

struct Pos {};

struct DPos {
    unsigned num_delegates = 1;
};

struct Pbft {
    unsigned n = 4;
    unsigned f = 1;
};

struct Rpca {
    double threshold = 0.80;  // inclusive, in (0.5, 1.0]
    unsigned max_rounds = 5;
};

struct Fpc {
    unsigned k = 10;
    double theta_low = 0.55;
    double theta_high = 0.75;
    unsigned ell = 3;
    unsigned max_rounds = 100;
};

using ConsensusConfig = std::variant<Pow, Pos, DPos, Pbft, Rpca, Fpc>;

/// Short engine name: pow, pos, dpos, pbft, rpca, fpc.
std::string engine_name(const ConsensusConfig& config);

/// Colon-separated form accepted by parse_config, e.g. "pow:8", "pbft:4:1",
/// "rpca:0.8:5", "fpc:10:0.55:0.75:3:100". Trailing fields may be omitted
/// and take their defaults.
std::string format_config(const ConsensusConfig& config);
ConsensusConfig parse_config(std::string_view text);

/// Throws InvalidConfig for out-of-range parameters. Returns non-fatal
/// warnings (PBFT with n < 3f + 1).
std::vector<std::string> validate_config(const ConsensusConfig& config);

/// Behaviour menu for simulated Byzantine nodes.
enum class Behavior : std::uint8_t {
    Honest,
    Silent,
    VoteNo,
    Equivocate,
    MinorityMax,
};

const char* to_string(Behavior b);
Behavior parse_behavior(std::string_view text);

}  // namespace datchain::consensus
