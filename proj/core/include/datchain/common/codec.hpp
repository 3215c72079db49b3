// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "datchain/common/bytes.hpp"
#include "datchain/common/error.hpp"

namespace datchain {

// Canonical encoding primitives. Integers are big-endian fixed width, byte
// strings carry a u32 length prefix. See docs/formats.md.

class ByteWriter {
public:
    ByteWriter& u8(std::uint8_t v);
    ByteWriter& u32(std::uint32_t v);
    ByteWriter& u64(std::uint64_t v);
    ByteWriter& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
    /// Raw bytes, no length prefix. Used for fixed-width fields.
    ByteWriter& raw(ByteView data);
    /// u32 length prefix followed by the bytes.
    ByteWriter& bytes(ByteView data);
    ByteWriter& str(std::string_view s) { return bytes(as_bytes(s)); }

    const Bytes& data() const& { return buf_; }
    Bytes take() && { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    Bytes buf_;
};

class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    ByteView raw(std::size_t n);
    /// Length-prefixed bytes. `limit` bounds the declared length.
    Bytes bytes(std::size_t limit = kDefaultLimit);
    std::string str(std::size_t limit = kDefaultLimit);

    std::size_t remaining() const { return data_.size() - pos_; }
    std::size_t position() const { return pos_; }
    bool done() const { return pos_ == data_.size(); }
    /// Throws DecodeError unless every byte was consumed.
    void expect_done() const;

    static constexpr std::size_t kDefaultLimit = 16u << 20;

private:
    void need(std::size_t n) const;

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace datchain
