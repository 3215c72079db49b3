// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace datchain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);

/// Parses lowercase or uppercase hex. Throws std::invalid_argument on odd
/// length or non-hex characters.
Bytes from_hex(std::string_view hex);

std::string to_base64(ByteView data);
Bytes from_base64(std::string_view text);

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
    return {s.begin(), s.end()};
}

}  // namespace datchain
