// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/pow.hpp"

#include "datchain/consensus/config.hpp"

namespace datchain::consensus {

namespace {

void check_difficulty(unsigned bits) {
    if (bits > 32) throw ConsensusError(ConsensusErrc::InvalidConfig, "difficulty_bits must be <= 32");
}

}  // namespace

std::optional<MineResult> pow_mine(ledger::BlockHeader header, unsigned difficulty_bits, std::uint64_t max_iters,
                                   std::uint64_t start_nonce) {
    check_difficulty(difficulty_bits);
    for (std::uint64_t i = 0; i < max_iters; ++i) {
        header.nonce = start_nonce + i;
        if (ledger::compute_block_hash(header).leading_zero_bits() >= difficulty_bits) {
            return MineResult{header.nonce, i + 1};
        }
    }
    return std::nullopt;
}

bool pow_verify(ledger::BlockHeader header, std::uint64_t nonce, unsigned difficulty_bits) {
    check_difficulty(difficulty_bits);
    header.nonce = nonce;
    return ledger::compute_block_hash(header).leading_zero_bits() >= difficulty_bits;
}

}  // namespace datchain::consensus
