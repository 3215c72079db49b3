// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace datchain {

/// Exception carrying a module-specific error code. Each module declares an
/// enum and a `to_string(Enum)` overload; callers switch on code().
template <typename Code>
class CodedError : public std::runtime_error {
public:
    CodedError(Code code, const std::string& detail)
        : std::runtime_error(describe(code, detail)), code_(code) {}

    explicit CodedError(Code code) : CodedError(code, {}) {}

    Code code() const noexcept { return code_; }

private:
    static std::string describe(Code code, const std::string& detail) {
        std::string out{to_string(code)};
        if (!detail.empty()) {
            out += ": ";
            out += detail;
        }
        return out;
    }

    Code code_;
};

/// Raised by the canonical decoder on truncated or malformed input.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace datchain
