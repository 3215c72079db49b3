// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/ledger/store.hpp"

#include <cstring>
#include <iterator>
#include <stdexcept>

#include "datchain/common/codec.hpp"

namespace datchain::ledger {

namespace fs = std::filesystem;

namespace {

constexpr char kLedgerMagic[4] = {'D', 'C', 'L', 'G'};
constexpr char kIndexMagic[4] = {'D', 'C', 'I', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

Bytes read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Bytes ledger_header(LedgerMode mode) {
    ByteWriter w;
    w.raw(as_bytes({kLedgerMagic, 4})).u32(kFormatVersion).u8(static_cast<std::uint8_t>(mode));
    return std::move(w).take();
}

Bytes index_header() {
    ByteWriter w;
    w.raw(as_bytes({kIndexMagic, 4})).u32(kFormatVersion);
    return std::move(w).take();
}

LedgerMode read_header(ByteView data) {
    if (data.size() < kLedgerHeaderSize || std::memcmp(data.data(), kLedgerMagic, 4) != 0) {
        throw std::runtime_error("not a ledger file");
    }
    ByteReader r(data.subspan(4));
    if (r.u32() != kFormatVersion) throw std::runtime_error("unsupported ledger version");
    auto mode = r.u8();
    if (mode != 1 && mode != 2) throw std::runtime_error("unknown ledger mode");
    return static_cast<LedgerMode>(mode);
}

}  // namespace

const char* to_string(LedgerMode mode) { return mode == LedgerMode::Chain ? "chain" : "tangle"; }

LedgerMode parse_ledger_mode(std::string_view text) {
    if (text == "chain") return LedgerMode::Chain;
    if (text == "tangle") return LedgerMode::Tangle;
    throw std::invalid_argument("ledger mode must be 'chain' or 'tangle'");
}

bool ledger_exists(const fs::path& dir) { return fs::exists(dir / kLedgerFileName); }

ScanResult scan_ledger(const fs::path& dir) {
    auto data = read_file(dir / kLedgerFileName);
    ScanResult out;
    out.mode = read_header(data);

    std::vector<std::uint64_t> offsets;
    bool have_index = fs::exists(dir / kIndexFileName);
    if (have_index) {
        auto idx = read_file(dir / kIndexFileName);
        if (idx.size() < kIndexHeaderSize || std::memcmp(idx.data(), kIndexMagic, 4) != 0 ||
            (idx.size() - kIndexHeaderSize) % 8 != 0) {
            out.bad_record = 0;
            out.error = "index file is malformed";
            return out;
        }
        ByteReader r(ByteView(idx).subspan(kIndexHeaderSize));
        while (!r.done()) offsets.push_back(r.u64());
    }

    std::size_t pos = kLedgerHeaderSize;
    std::uint64_t n = 0;
    auto fail = [&](std::string why) {
        out.bad_record = n;
        out.error = std::move(why);
        return out;
    };
    while (pos < data.size()) {
        if (have_index && (n >= offsets.size() || offsets[n] != pos)) {
            return fail("index offset mismatch for record " + std::to_string(n));
        }
        if (data.size() - pos < 5) return fail("truncated record header");
        ByteReader r(ByteView(data).subspan(pos));
        auto len = r.u32();
        if (len < 1 || len > data.size() - pos - 4) return fail("record length out of range");
        auto type = r.u8();
        if (type != static_cast<std::uint8_t>(RecordType::Block) &&
            type != static_cast<std::uint8_t>(RecordType::Site)) {
            return fail("unknown record type");
        }
        auto body = r.raw(len - 1);
        out.records.push_back(Record{static_cast<RecordType>(type), Bytes(body.begin(), body.end()), pos});
        pos += 4 + len;
        ++n;
    }
    if (have_index && offsets.size() != n) return fail("index has extra entries");
    return out;
}

LedgerWriter::LedgerWriter(const fs::path& dir, LedgerMode mode) : dir_(dir), mode_(mode) {
    fs::create_directories(dir);
    auto data_path = dir / kLedgerFileName;
    auto index_path = dir / kIndexFileName;
    if (fs::exists(data_path)) {
        auto scan = scan_ledger(dir);
        if (scan.mode != mode) throw std::runtime_error("ledger mode mismatch in " + dir.string());
        if (scan.bad_record) throw std::runtime_error("ledger is damaged: " + scan.error);
        count_ = scan.records.size();
        size_ = fs::file_size(data_path);
        data_.open(data_path, std::ios::binary | std::ios::app);
        index_.open(index_path, std::ios::binary | std::ios::app);
    } else {
        data_.open(data_path, std::ios::binary | std::ios::trunc);
        index_.open(index_path, std::ios::binary | std::ios::trunc);
        auto h = ledger_header(mode);
        auto ih = index_header();
        data_.write(reinterpret_cast<const char*>(h.data()), static_cast<std::streamsize>(h.size()));
        index_.write(reinterpret_cast<const char*>(ih.data()), static_cast<std::streamsize>(ih.size()));
        data_.flush();
        index_.flush();
        size_ = h.size();
    }
    if (!data_ || !index_) throw std::runtime_error("cannot open ledger files in " + dir.string());
}

void LedgerWriter::append(RecordType type, ByteView body) {
    ByteWriter rec;
    rec.u32(static_cast<std::uint32_t>(body.size() + 1)).u8(static_cast<std::uint8_t>(type)).raw(body);
    ByteWriter idx;
    idx.u64(size_);
    data_.write(reinterpret_cast<const char*>(rec.data().data()), static_cast<std::streamsize>(rec.size()));
    data_.flush();
    index_.write(reinterpret_cast<const char*>(idx.data().data()), static_cast<std::streamsize>(idx.size()));
    index_.flush();
    if (!data_ || !index_) throw std::runtime_error("ledger write failed");
    size_ += rec.size();
    ++count_;
}

}  // namespace datchain::ledger
