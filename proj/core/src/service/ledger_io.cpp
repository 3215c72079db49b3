// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/ledger_io.hpp"

#include <fstream>
#include <sstream>

#include "datchain/service/config.hpp"

namespace datchain::service {

namespace fs = std::filesystem;

void write_meta(const fs::path& dir, const LedgerMeta& meta) {
    fs::create_directories(dir);
    std::ofstream out(dir / kMetaFileName, std::ios::trunc);
    out << "ledger_mode = " << ledger::to_string(meta.mode) << '\n'
        << "engine = " << consensus::format_config(meta.engine) << '\n'
        << "chain_id = " << meta.chain_id << '\n';
    if (!out) throw std::runtime_error("cannot write " + (dir / kMetaFileName).string());
}

std::optional<LedgerMeta> read_meta(const fs::path& dir) {
    std::ifstream in(dir / kMetaFileName);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    NodeConfig c = parse_node_config(buf.str());
    return LedgerMeta{c.ledger_mode, c.engine, c.chain_id};
}

LoadedLedger load_ledger(const fs::path& dir, const consensus::ConsensusConfig& engine) {
    using ledger::VerifyFailure;
    using ledger::VerifyReport;
    auto scan = ledger::scan_ledger(dir);
    LoadedLedger out;
    out.mode = scan.mode;
    const auto expect = scan.mode == ledger::LedgerMode::Chain ? ledger::RecordType::Block : ledger::RecordType::Site;

    std::optional<VerifyReport> framing;
    for (std::size_t i = 0; i < scan.records.size(); ++i) {
        const auto& rec = scan.records[i];
        if (rec.type != expect) {
            framing = VerifyReport::bad(i, VerifyFailure::Malformed, "record type does not match ledger mode");
            break;
        }
        try {
            if (expect == ledger::RecordType::Block) out.blocks.push_back(ledger::Block::decode(rec.body));
            else out.sites.push_back(tangle::TangleSite::decode(rec.body));
        } catch (const std::exception& e) {
            framing = VerifyReport::bad(i, VerifyFailure::Malformed, e.what());
            break;
        }
    }
    if (!framing && scan.bad_record) framing = VerifyReport::bad(*scan.bad_record, VerifyFailure::Malformed, scan.error);

    VerifyReport content = expect == ledger::RecordType::Block
                               ? ledger::verify_blocks(out.blocks, engine)
                               : tangle::verify_sites(out.sites, attach_difficulty(engine));
    if (out.blocks.empty() && out.sites.empty() && !framing)
        content = VerifyReport::bad(0, VerifyFailure::BadGenesis, "ledger holds no records");

    if (!content.valid && (!framing || content.first_bad_index < framing->first_bad_index)) out.report = content;
    else if (framing) out.report = *framing;
    else out.report = content;

    if (!out.report.valid) {
        const auto keep = static_cast<std::size_t>(out.report.first_bad_index);
        if (out.blocks.size() > keep) out.blocks.resize(keep);
        if (out.sites.size() > keep) out.sites.resize(keep);
    }
    return out;
}

std::vector<ledger::Transaction> ledger_transactions(const LoadedLedger& ledger) {
    std::vector<ledger::Transaction> out;
    for (const auto& b : ledger.blocks)
        for (const auto& tx : b.transactions) out.push_back(tx);
    for (const auto& s : ledger.sites)
        if (s.payload) out.push_back(*s.payload);
    return out;
}

market::MarketState replay_market(const LoadedLedger& ledger) {
    market::MarketState state;
    auto txs = ledger_transactions(ledger);
    market::apply_committed(state, txs);
    return state;
}

}  // namespace datchain::service
