// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "datchain/common/error.hpp"
#include "datchain/consensus/config.hpp"
#include "datchain/ledger/block.hpp"

namespace datchain::ledger {

enum class LedgerErrc {
    InvalidParent,
    InvalidProof,
    InvalidTransaction,
    StaleIndex,
    BadHash,
    BadTxRoot,
    Oversized,
    Malformed,
};

const char* to_string(LedgerErrc code);

using LedgerError = CodedError<LedgerErrc>;

/// Append-only chain. Blocks are shared immutable values, so copying a
/// ChainState is cheap and a copy is a stable snapshot.
class ChainState {
public:
    explicit ChainState(Block genesis);

    std::uint64_t height() const { return blocks_.size() - 1; }
    const Hash& head_hash() const { return blocks_.back()->hash; }
    const Block& head() const { return *blocks_.back(); }
    const Block& at(std::uint64_t index) const { return *blocks_.at(index); }
    std::size_t size() const { return blocks_.size(); }

    const KeyRegistry& registry() const { return registry_; }
    std::optional<std::uint64_t> last_sequence(const Address& sender) const;

    /// Hash over the canonical encodings of every block, in order.
    Hash digest() const;

    friend ChainState append_block(ChainState state, const Block& block,
                                   const consensus::ConsensusConfig& engine);

private:
    std::vector<std::shared_ptr<const Block>> blocks_;
    KeyRegistry registry_;
    std::map<Address, std::uint64_t> sequences_;
};

/// Validates `block` as the successor of the head and returns the extended
/// state. Throws LedgerError; `state` is taken by value so callers can move
/// in and keep the original on failure.
ChainState append_block(ChainState state, const Block& block, const consensus::ConsensusConfig& engine);

/// Consensus proof check for a block header. Only PoW carries a
/// block-level proof; other engines certify blocks out of band.
bool check_proof(const Block& block, const consensus::ConsensusConfig& engine);

enum class VerifyFailure {
    None,
    HashMismatch,
    LinkBroken,
    BadIndex,
    BadTxRoot,
    BadTransaction,
    BadGenesis,
    InvalidProof,
    Malformed,
};

const char* to_string(VerifyFailure f);

struct VerifyReport {
    bool valid = true;
    std::uint64_t first_bad_index = 0;
    VerifyFailure reason = VerifyFailure::None;
    std::string detail;

    static VerifyReport ok() { return {}; }
    static VerifyReport bad(std::uint64_t index, VerifyFailure why, std::string detail);
};

/// Full verification of an ordered block list: recomputed hashes, parent
/// links, indices, tx roots, signatures and sequence numbers. Reports the
/// first violation.
VerifyReport verify_blocks(std::span<const Block> blocks, const consensus::ConsensusConfig& engine = {});

VerifyReport verify_chain(const ChainState& state, const consensus::ConsensusConfig& engine = {});

/// Takes up to kMaxBlockTransactions from the front of `pending` (FIFO) and
/// builds the unmined successor of the head.
Block build_block(const ChainState& state, std::deque<Transaction>& pending, std::int64_t timestamp);

}  // namespace datchain::ledger
