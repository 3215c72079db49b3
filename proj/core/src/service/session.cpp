// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/service/session.hpp"

#include <stdexcept>

#include "datchain/common/codec.hpp"

namespace datchain::service {

std::string session_challenge(const Address& address, std::int64_t timestamp) {
    return "datchain-session:" + address.hex() + ":" + std::to_string(timestamp);
}

std::string SessionToken::encode() const {
    ByteWriter w;
    w.raw(address.view()).i64(issued_at).i64(expiry).raw(mac.view());
    return to_base64(w.data());
}

std::optional<SessionToken> SessionToken::decode(std::string_view text) {
    try {
        Bytes raw = from_base64(text);
        if (raw.size() != 32 + 8 + 8 + 32) return std::nullopt;
        ByteReader r(raw);
        SessionToken t;
        t.address = Hash::from_bytes(r.raw(32));
        t.issued_at = r.i64();
        t.expiry = r.i64();
        t.mac = Hash::from_bytes(r.raw(32));
        return t;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

SessionIssuer::SessionIssuer(Bytes secret, std::int64_t ttl) : secret_(std::move(secret)), ttl_(ttl) {
    if (secret_.empty()) throw std::invalid_argument("session secret is empty");
    if (ttl_ <= 0) throw std::invalid_argument("session ttl must be positive");
}

Hash SessionIssuer::mac_of(const SessionToken& t) const {
    ByteWriter w;
    w.raw(as_bytes("datchain-token")).raw(t.address.view()).i64(t.issued_at).i64(t.expiry);
    return hmac_sha256(secret_, w.data());
}

SessionToken SessionIssuer::issue(const Address& address, std::int64_t now) const {
    SessionToken t;
    t.address = address;
    t.issued_at = now;
    t.expiry = now + ttl_;
    t.mac = mac_of(t);
    return t;
}

std::optional<Address> SessionIssuer::verify(std::string_view token, std::int64_t now) const {
    auto t = SessionToken::decode(token);
    if (!t) return std::nullopt;
    if (!tags_equal(mac_of(*t), t->mac)) return std::nullopt;
    if (t->expiry <= t->issued_at || now < t->issued_at || now >= t->expiry) return std::nullopt;
    return t->address;
}

}  // namespace datchain::service
