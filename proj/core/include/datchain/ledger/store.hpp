// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "datchain/common/bytes.hpp"

namespace datchain::ledger {

// On-disk ledger: ledger.dat holds a file header followed by length-prefixed
// records; ledger.idx maps record number (block height or site position) to
// the record's byte offset in ledger.dat. Byte layouts are in
// docs/formats.md.

enum class LedgerMode : std::uint8_t { Chain = 1, Tangle = 2 };
enum class RecordType : std::uint8_t { Block = 1, Site = 2 };

const char* to_string(LedgerMode mode);
LedgerMode parse_ledger_mode(std::string_view text);

inline constexpr const char* kLedgerFileName = "ledger.dat";
inline constexpr const char* kIndexFileName = "ledger.idx";
inline constexpr std::size_t kLedgerHeaderSize = 9;
inline constexpr std::size_t kIndexHeaderSize = 8;

struct Record {
    RecordType type = RecordType::Block;
    Bytes body;
    std::uint64_t offset = 0;
};

struct ScanResult {
    LedgerMode mode = LedgerMode::Chain;
    std::vector<Record> records;
    /// Set when framing breaks or the index disagrees; records holds the
    /// intact prefix.
    std::optional<std::uint64_t> bad_record;
    std::string error;
};

/// Reads and frames every record. Throws std::runtime_error only when the
/// file is missing or its header is unreadable.
ScanResult scan_ledger(const std::filesystem::path& dir);

bool ledger_exists(const std::filesystem::path& dir);

/// Append-only writer. Opening an existing directory checks the mode and
/// continues after the last record.
class LedgerWriter {
public:
    LedgerWriter(const std::filesystem::path& dir, LedgerMode mode);

    void append(RecordType type, ByteView body);
    std::uint64_t record_count() const { return count_; }
    LedgerMode mode() const { return mode_; }

private:
    std::filesystem::path dir_;
    LedgerMode mode_;
    std::ofstream data_;
    std::ofstream index_;
    std::uint64_t size_ = 0;
    std::uint64_t count_ = 0;
};

}  // namespace datchain::ledger
