// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "datchain/ledger/block.hpp"

namespace datchain::consensus {

struct MineResult {
    std::uint64_t nonce = 0;
    /// Hashes computed, including the successful one.
    std::uint64_t attempts = 0;
};

/// Searches nonces start_nonce, start_nonce + 1, ... for a header hash with
/// at least `difficulty_bits` leading zero bits. nullopt means Exhausted.
std::optional<MineResult> pow_mine(ledger::BlockHeader header, unsigned difficulty_bits, std::uint64_t max_iters,
                                   std::uint64_t start_nonce = 0);

/// One hash.
bool pow_verify(ledger::BlockHeader header, std::uint64_t nonce, unsigned difficulty_bits);

}  // namespace datchain::consensus
