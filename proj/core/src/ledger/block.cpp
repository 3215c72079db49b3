// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/ledger/block.hpp"

namespace datchain::ledger {

namespace {

constexpr std::uint8_t kBlockVersion = 1;

}  // namespace

Bytes BlockHeader::encode() const {
    ByteWriter w;
    w.u8(kBlockVersion).u64(index).raw(prev_hash.view()).i64(timestamp).u64(nonce).raw(tx_root.view());
    return std::move(w).take();
}

BlockHeader BlockHeader::decode(ByteReader& in) {
    if (in.u8() != kBlockVersion) throw DecodeError("unsupported block version");
    BlockHeader h;
    h.index = in.u64();
    h.prev_hash = Hash::from_bytes(in.raw(32));
    h.timestamp = in.i64();
    h.nonce = in.u64();
    h.tx_root = Hash::from_bytes(in.raw(32));
    return h;
}

Bytes Block::encode() const {
    ByteWriter w;
    w.raw(header.encode());
    w.u32(static_cast<std::uint32_t>(transactions.size()));
    for (const auto& tx : transactions) tx.encode(w);
    w.raw(hash.view());
    return std::move(w).take();
}

Block Block::decode(ByteView data) {
    ByteReader in(data);
    Block b;
    b.header = BlockHeader::decode(in);
    auto count = in.u32();
    if (count > kMaxBlockTransactions) throw DecodeError("transaction count exceeds block capacity");
    b.transactions.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) b.transactions.push_back(Transaction::decode(in));
    b.hash = Hash::from_bytes(in.raw(32));
    in.expect_done();
    return b;
}

Hash compute_block_hash(const BlockHeader& header) { return sha256(header.encode()); }

Hash compute_tx_root(std::span<const Transaction> txs) {
    Sha256 h;
    ByteWriter count;
    count.u32(static_cast<std::uint32_t>(txs.size()));
    h.update(count.data());
    for (const auto& tx : txs) h.update(tx.id());
    return h.finish();
}

Hash genesis_tx_root(std::string_view chain_id) {
    return Sha256().update("datchain-genesis:").update(chain_id).finish();
}

Block make_genesis(std::string_view chain_id, std::int64_t timestamp) {
    Block b;
    b.header.index = 0;
    b.header.prev_hash = Hash::zero();
    b.header.timestamp = timestamp;
    b.header.nonce = 0;
    b.header.tx_root = genesis_tx_root(chain_id);
    b.hash = compute_block_hash(b.header);
    return b;
}

Block make_block(std::uint64_t index, const Hash& prev_hash, std::int64_t timestamp,
                 std::vector<Transaction> txs) {
    Block b;
    b.header.index = index;
    b.header.prev_hash = prev_hash;
    b.header.timestamp = timestamp;
    b.header.nonce = 0;
    b.header.tx_root = compute_tx_root(txs);
    b.transactions = std::move(txs);
    b.hash = compute_block_hash(b.header);
    return b;
}

void set_nonce(Block& block, std::uint64_t nonce) {
    block.header.nonce = nonce;
    block.hash = compute_block_hash(block.header);
}

}  // namespace datchain::ledger
