// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <fstream>

#include "datchain/consensus/pow.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/ledger/store.hpp"
#include "datchain/market/actions.hpp"
#include "datchain/service/ledger_io.hpp"
#include "support.hpp"

using namespace datchain;
namespace ts = datchain::test_support;
using ts::TempDir;

namespace {

ledger::ChainState build(const std::vector<ledger::Block>& blocks, const consensus::ConsensusConfig& engine = {}) {
    ledger::ChainState s(blocks.front());
    for (std::size_t i = 1; i < blocks.size(); ++i) s = ledger::append_block(std::move(s), blocks[i], engine);
    return s;
}

void write_chain(const std::filesystem::path& dir, const std::vector<ledger::Block>& blocks) {
    ledger::LedgerWriter w(dir, ledger::LedgerMode::Chain);
    for (const auto& b : blocks) w.append(ledger::RecordType::Block, b.encode());
}

}  // namespace

TEST(Genesis, HashMatchesOracle) {
    auto g = ledger::make_genesis("datchain-local", 0);
    EXPECT_EQ(g.hash.hex(), "3403e00ae0b194c26665aa37e17daf6c902621808737e45833313cab5c344ed3");
}

TEST(Block, EncodeDecodeRoundTrip) {
    Rng rng(1);
    for (const auto& b : ts::random_chain(rng, 10)) EXPECT_EQ(ledger::Block::decode(b.encode()), b);
}

TEST(Chain, AppendRejectsBadLinks) {
    Rng rng(2);
    auto blocks = ts::random_chain(rng, 5);
    auto state = build(blocks);
    EXPECT_EQ(state.height(), 5u);
    EXPECT_TRUE(ledger::verify_chain(state).valid);

    auto stale = blocks[3];
    EXPECT_THROW(ledger::append_block(state, stale, {}), ledger::LedgerError);

    auto orphan = ledger::make_block(6, sha256("nowhere"), 60, {});
    try {
        ledger::append_block(state, orphan, {});
        FAIL();
    } catch (const ledger::LedgerError& e) {
        EXPECT_EQ(e.code(), ledger::LedgerErrc::InvalidParent);
    }
}

TEST(Chain, ReplayedSequenceRejected) {
    auto k = ts::key("alice");
    auto signup = market::make_action_tx(market::SignUpAction{k.public_key(), market::Role::Both, 100, 0}, 1, k);
    auto t2 = market::make_action_tx(market::TransferAction{k.address(), 1}, 2, k);
    ledger::ChainState s(ledger::make_genesis("c", 0));
    s = ledger::append_block(s, ledger::make_block(1, s.head_hash(), 1, {signup, t2}), {});
    auto replay = ledger::make_block(2, s.head_hash(), 2, {t2});
    EXPECT_THROW(ledger::append_block(s, replay, {}), ledger::LedgerError);
}

TEST(Chain, VerifyReportsFirstBadIndex) {
    Rng rng(3);
    auto blocks = ts::random_chain(rng, 12);
    EXPECT_TRUE(ledger::verify_blocks(blocks).valid);
    blocks[7].header.timestamp += 1;
    auto r = ledger::verify_blocks(blocks);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.first_bad_index, 7u);
    EXPECT_EQ(r.reason, ledger::VerifyFailure::HashMismatch);
}

TEST(Chain, PowProofChecked) {
    Rng rng(4);
    auto blocks = ts::random_chain(rng, 4, 6);
    EXPECT_TRUE(ledger::verify_blocks(blocks, consensus::Pow{6}).valid);
    auto weak = ts::random_chain(rng, 4, 0);
    auto r = ledger::verify_blocks(weak, consensus::Pow{12});
    if (!r.valid) {
        EXPECT_EQ(r.reason, ledger::VerifyFailure::InvalidProof);
    }
}

TEST(Pow, MineAndVerify) {
    ledger::BlockHeader h;
    h.index = 1;
    h.prev_hash = sha256("p");
    auto m = consensus::pow_mine(h, 10, 1 << 24);
    ASSERT_TRUE(m);
    EXPECT_TRUE(consensus::pow_verify(h, m->nonce, 10));
    EXPECT_EQ(m->attempts, m->nonce + 1);
    EXPECT_FALSE(consensus::pow_mine(h, 30, 10));
}

TEST(Pow, MeanAttemptsNearTwoToBits) {
    Rng rng(99);
    double total = 0;
    for (int i = 0; i < 200; ++i) {
        ledger::BlockHeader h;
        h.index = rng.next();
        h.tx_root = sha256(std::to_string(rng.next()));
        total += static_cast<double>(consensus::pow_mine(h, 8, 1 << 24)->attempts);
    }
    EXPECT_GE(total / 200, 179.0);
    EXPECT_LE(total / 200, 365.0);
}

TEST(Store, AppendScanRoundTrip) {
    TempDir dir;
    Rng rng(5);
    auto blocks = ts::random_chain(rng, 8);
    write_chain(dir.path(), blocks);
    auto scan = ledger::scan_ledger(dir.path());
    ASSERT_FALSE(scan.bad_record);
    ASSERT_EQ(scan.records.size(), blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) EXPECT_EQ(ledger::Block::decode(scan.records[i].body), blocks[i]);

    // Reopen appends after the existing records.
    {
        ledger::LedgerWriter w(dir.path(), ledger::LedgerMode::Chain);
        EXPECT_EQ(w.record_count(), blocks.size());
    }
    EXPECT_THROW(ledger::LedgerWriter(dir.path(), ledger::LedgerMode::Tangle), std::runtime_error);
}

TEST(Store, FlippedByteNamesBlock) {
    TempDir dir;
    Rng rng(6);
    auto blocks = ts::random_chain(rng, 10);
    write_chain(dir.path(), blocks);
    service::write_meta(dir.path(), {ledger::LedgerMode::Chain, consensus::Pow{0}, "test-chain"});
    auto scan = ledger::scan_ledger(dir.path());
    const auto target = scan.records[6].offset + 20;

    auto path = dir.path() / ledger::kLedgerFileName;
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(static_cast<std::streamoff>(target));
    char c;
    f.get(c);
    f.seekp(static_cast<std::streamoff>(target));
    f.put(static_cast<char>(c ^ 0x40));
    f.close();

    auto loaded = service::load_ledger(dir.path(), consensus::Pow{0});
    EXPECT_FALSE(loaded.report.valid);
    EXPECT_EQ(loaded.report.first_bad_index, 6u);
    EXPECT_EQ(loaded.blocks.size(), 6u);
}
