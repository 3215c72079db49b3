// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/ledger/chain.hpp"

#include <functional>

namespace datchain::ledger {

const char* to_string(LedgerErrc code) {
    switch (code) {
        case LedgerErrc::InvalidParent: return "InvalidParent";
        case LedgerErrc::InvalidProof: return "InvalidProof";
        case LedgerErrc::InvalidTransaction: return "InvalidTransaction";
        case LedgerErrc::StaleIndex: return "StaleIndex";
        case LedgerErrc::BadHash: return "BadHash";
        case LedgerErrc::BadTxRoot: return "BadTxRoot";
        case LedgerErrc::Oversized: return "Oversized";
        case LedgerErrc::Malformed: return "Malformed";
    }
    return "Unknown";
}

const char* to_string(VerifyFailure f) {
    switch (f) {
        case VerifyFailure::None: return "none";
        case VerifyFailure::HashMismatch: return "hash mismatch";
        case VerifyFailure::LinkBroken: return "parent link broken";
        case VerifyFailure::BadIndex: return "bad index";
        case VerifyFailure::BadTxRoot: return "transaction root mismatch";
        case VerifyFailure::BadTransaction: return "invalid transaction";
        case VerifyFailure::BadGenesis: return "bad genesis";
        case VerifyFailure::InvalidProof: return "invalid consensus proof";
        case VerifyFailure::Malformed: return "malformed record";
    }
    return "unknown";
}

VerifyReport VerifyReport::bad(std::uint64_t index, VerifyFailure why, std::string detail) {
    VerifyReport r;
    r.valid = false;
    r.first_bad_index = index;
    r.reason = why;
    r.detail = std::move(detail);
    return r;
}

bool check_proof(const Block& block, const consensus::ConsensusConfig& engine) {
    if (const auto* pow = std::get_if<consensus::Pow>(&engine)) {
        return block.hash.leading_zero_bits() >= pow->difficulty_bits;
    }
    return true;
}

namespace {

// Sequence numbers strictly increase per sender. A sender with no history
// may start anywhere.
bool sequence_ok(const std::map<Address, std::uint64_t>& seqs, const Transaction& tx) {
    auto it = seqs.find(tx.sender);
    return it == seqs.end() || tx.sequence > it->second;
}

// Signature and sequence checks for one block's transactions, updating the
// registry and sequence map as it goes. Returns an error description or "".
std::string apply_transactions(const Block& block, KeyRegistry& registry,
                               std::map<Address, std::uint64_t>& seqs) {
    for (std::size_t i = 0; i < block.transactions.size(); ++i) {
        const auto& tx = block.transactions[i];
        auto check = check_transaction(tx, registry);
        if (check != TxCheck::Ok) {
            return "tx " + std::to_string(i) + ": " + to_string(check);
        }
        if (!sequence_ok(seqs, tx)) {
            return "tx " + std::to_string(i) + ": non-increasing sequence";
        }
        if (tx.kind == TxKind::SignUp) registry.add(*signer_key(tx, registry));
        seqs[tx.sender] = tx.sequence;
    }
    return {};
}

VerifyReport verify_range(std::size_t count, const std::function<const Block&(std::size_t)>& at,
                          const consensus::ConsensusConfig& engine) {
    KeyRegistry registry;
    std::map<Address, std::uint64_t> seqs;
    for (std::size_t k = 0; k < count; ++k) {
        const Block& b = at(k);
        if (compute_block_hash(b.header) != b.hash) {
            return VerifyReport::bad(k, VerifyFailure::HashMismatch, "stored hash does not recompute");
        }
        if (b.header.index != k) {
            return VerifyReport::bad(k, VerifyFailure::BadIndex,
                                     "index field is " + std::to_string(b.header.index));
        }
        if (k == 0) {
            if (!b.header.prev_hash.is_zero() || !b.transactions.empty()) {
                return VerifyReport::bad(0, VerifyFailure::BadGenesis, "genesis must be parentless and empty");
            }
            continue;
        }
        if (b.header.prev_hash != at(k - 1).hash) {
            return VerifyReport::bad(k, VerifyFailure::LinkBroken, "prev_hash does not match block " +
                                                                       std::to_string(k - 1));
        }
        if (compute_tx_root(b.transactions) != b.header.tx_root) {
            return VerifyReport::bad(k, VerifyFailure::BadTxRoot, "tx_root does not recompute");
        }
        if (!check_proof(b, engine)) {
            return VerifyReport::bad(k, VerifyFailure::InvalidProof, consensus::format_config(engine));
        }
        if (auto err = apply_transactions(b, registry, seqs); !err.empty()) {
            return VerifyReport::bad(k, VerifyFailure::BadTransaction, err);
        }
    }
    return VerifyReport::ok();
}

}  // namespace

ChainState::ChainState(Block genesis) {
    if (genesis.header.index != 0 || !genesis.header.prev_hash.is_zero() || !genesis.transactions.empty()) {
        throw LedgerError(LedgerErrc::Malformed, "not a genesis block");
    }
    if (compute_block_hash(genesis.header) != genesis.hash) {
        throw LedgerError(LedgerErrc::BadHash, "genesis hash does not recompute");
    }
    blocks_.push_back(std::make_shared<const Block>(std::move(genesis)));
}

std::optional<std::uint64_t> ChainState::last_sequence(const Address& sender) const {
    auto it = sequences_.find(sender);
    if (it == sequences_.end()) return std::nullopt;
    return it->second;
}

Hash ChainState::digest() const {
    Sha256 h;
    ByteWriter count;
    count.u64(blocks_.size());
    h.update(count.data());
    for (const auto& b : blocks_) {
        ByteWriter rec;
        rec.bytes(b->encode());
        h.update(rec.data());
    }
    return h.finish();
}

ChainState append_block(ChainState state, const Block& block, const consensus::ConsensusConfig& engine) {
    if (block.header.prev_hash != state.head_hash()) {
        throw LedgerError(LedgerErrc::InvalidParent, "prev_hash is not the current head");
    }
    if (block.header.index != state.height() + 1) {
        throw LedgerError(LedgerErrc::StaleIndex, "expected index " + std::to_string(state.height() + 1));
    }
    if (compute_block_hash(block.header) != block.hash) {
        throw LedgerError(LedgerErrc::BadHash, "stored hash does not recompute");
    }
    if (block.transactions.size() > kMaxBlockTransactions) {
        throw LedgerError(LedgerErrc::Oversized, std::to_string(block.transactions.size()) + " transactions");
    }
    if (compute_tx_root(block.transactions) != block.header.tx_root) {
        throw LedgerError(LedgerErrc::BadTxRoot);
    }
    if (!check_proof(block, engine)) {
        throw LedgerError(LedgerErrc::InvalidProof, consensus::format_config(engine));
    }
    if (auto err = apply_transactions(block, state.registry_, state.sequences_); !err.empty()) {
        throw LedgerError(LedgerErrc::InvalidTransaction, err);
    }
    state.blocks_.push_back(std::make_shared<const Block>(block));
    return state;
}

VerifyReport verify_blocks(std::span<const Block> blocks, const consensus::ConsensusConfig& engine) {
    return verify_range(blocks.size(), [&](std::size_t i) -> const Block& { return blocks[i]; }, engine);
}

VerifyReport verify_chain(const ChainState& state, const consensus::ConsensusConfig& engine) {
    return verify_range(state.size(), [&](std::size_t i) -> const Block& { return state.at(i); }, engine);
}

Block build_block(const ChainState& state, std::deque<Transaction>& pending, std::int64_t timestamp) {
    std::vector<Transaction> txs;
    while (!pending.empty() && txs.size() < kMaxBlockTransactions) {
        txs.push_back(std::move(pending.front()));
        pending.pop_front();
    }
    return make_block(state.height() + 1, state.head_hash(), timestamp, std::move(txs));
}

}  // namespace datchain::ledger
