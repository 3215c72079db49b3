// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/common/codec.hpp"

#include <limits>

namespace datchain {

ByteWriter& ByteWriter::u8(std::uint8_t v) {
    buf_.push_back(v);
    return *this;
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> shift));
    return *this;
}

ByteWriter& ByteWriter::raw(ByteView data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
    return *this;
}

ByteWriter& ByteWriter::bytes(ByteView data) {
    if (data.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw std::length_error("byte field exceeds u32 length prefix");
    }
    u32(static_cast<std::uint32_t>(data.size()));
    return raw(data);
}

void ByteReader::need(std::size_t n) const {
    if (remaining() < n) throw DecodeError("truncated input");
}

std::uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
    return v;
}

ByteView ByteReader::raw(std::size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

Bytes ByteReader::bytes(std::size_t limit) {
    auto n = u32();
    if (n > limit) throw DecodeError("length prefix exceeds limit");
    auto v = raw(n);
    return {v.begin(), v.end()};
}

std::string ByteReader::str(std::size_t limit) {
    auto b = bytes(limit);
    return {b.begin(), b.end()};
}

void ByteReader::expect_done() const {
    if (!done()) throw DecodeError("trailing bytes");
}

}  // namespace datchain
