// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "datchain/ledger/transaction.hpp"

namespace datchain::ledger {

/// Upper bound on transactions per block.
inline constexpr std::size_t kMaxBlockTransactions = 100;

/// Header fields covered by the block hash. Encoded as a fixed 89-byte
/// record: version(1) ‖ index(8) ‖ prev_hash(32) ‖ timestamp(8) ‖ nonce(8) ‖
/// tx_root(32).
struct BlockHeader {
    std::uint64_t index = 0;
    Hash prev_hash;
    std::int64_t timestamp = 0;
    std::uint64_t nonce = 0;
    Hash tx_root;

    Bytes encode() const;
    static BlockHeader decode(ByteReader& in);

    bool operator==(const BlockHeader&) const = default;
};

inline constexpr std::size_t kBlockHeaderSize = 89;

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;
    Hash hash;

    std::uint64_t index() const { return header.index; }

    Bytes encode() const;
    static Block decode(ByteView data);

    bool operator==(const Block&) const = default;
};

Hash compute_block_hash(const BlockHeader& header);

/// SHA-256 over u32 count followed by the ordered transaction ids.
Hash compute_tx_root(std::span<const Transaction> txs);

/// Genesis commits to the chain id through its tx_root.
Hash genesis_tx_root(std::string_view chain_id);

Block make_genesis(std::string_view chain_id, std::int64_t timestamp);

/// Unmined successor: nonce 0, hash filled in for that nonce.
Block make_block(std::uint64_t index, const Hash& prev_hash, std::int64_t timestamp,
                 std::vector<Transaction> txs);

/// Sets the nonce and refreshes the stored hash.
void set_nonce(Block& block, std::uint64_t nonce);

}  // namespace datchain::ledger
