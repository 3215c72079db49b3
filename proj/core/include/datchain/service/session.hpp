// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "datchain/crypto/hash.hpp"
#include "datchain/crypto/keys.hpp"

namespace datchain::service {

struct SessionToken {
    Address address;
    std::int64_t issued_at = 0;
    std::int64_t expiry = 0;
    Hash mac;

    /// base64(address ‖ issued_at ‖ expiry ‖ mac).
    std::string encode() const;
    static std::optional<SessionToken> decode(std::string_view text);
};

/// Maximum distance between a sign-in challenge timestamp and server time.
inline constexpr std::int64_t kChallengeWindow = 300;

/// Bytes an account signs to obtain a session: "datchain-session:" ‖
/// address hex ‖ ":" ‖ decimal timestamp.
std::string session_challenge(const Address& address, std::int64_t timestamp);

class SessionIssuer {
public:
    SessionIssuer(Bytes secret, std::int64_t ttl);

    SessionToken issue(const Address& address, std::int64_t now) const;

    /// Address of a token whose MAC verifies and which is unexpired at
    /// `now`.
    std::optional<Address> verify(std::string_view token, std::int64_t now) const;

    std::int64_t ttl() const { return ttl_; }

private:
    Hash mac_of(const SessionToken& t) const;

    Bytes secret_;
    std::int64_t ttl_;
};

}  // namespace datchain::service
