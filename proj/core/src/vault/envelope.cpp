// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/vault/envelope.hpp"

#include <algorithm>
#include <limits>

#include "datchain/common/codec.hpp"

namespace datchain::vault {

const char* to_string(VaultErrc code) {
    switch (code) {
        case VaultErrc::PayloadTooLarge: return "PayloadTooLarge";
        case VaultErrc::NonceExhausted: return "NonceExhausted";
        case VaultErrc::AuthFailure: return "AuthFailure";
        case VaultErrc::AccessDenied: return "AccessDenied";
        case VaultErrc::NotFound: return "NotFound";
        case VaultErrc::IntegrityFailure: return "IntegrityFailure";
        case VaultErrc::AmbiguousAttribution: return "AmbiguousAttribution";
        case VaultErrc::UnknownKey: return "UnknownKey";
        case VaultErrc::Malformed: return "Malformed";
        case VaultErrc::Io: return "Io";
    }
    return "unknown";
}

Bytes DataEnvelope::aad() const {
    ByteWriter w;
    w.raw(sensor_id.view()).i64(captured_at);
    return std::move(w).take();
}

Bytes DataEnvelope::sealed_bytes() const {
    ByteWriter w;
    w.raw(sensor_id.view()).i64(captured_at).raw(nonce).bytes(ciphertext);
    return std::move(w).take();
}

Hash DataEnvelope::compute_id() const {
    return sha256(sealed_bytes());
}

Bytes DataEnvelope::encode() const {
    ByteWriter w;
    w.u8(1).raw(envelope_id.view()).raw(sealed_bytes());
    return std::move(w).take();
}

DataEnvelope DataEnvelope::decode(ByteView data) {
    ByteReader in(data);
    if (in.u8() != 1) throw DecodeError("unsupported envelope version");
    DataEnvelope e;
    e.envelope_id = Hash::from_bytes(in.raw(32));
    e.sensor_id = Hash::from_bytes(in.raw(32));
    e.captured_at = in.i64();
    auto n = in.raw(e.nonce.size());
    std::copy(n.begin(), n.end(), e.nonce.begin());
    e.ciphertext = in.bytes(kMaxPayloadSize + kAeadTagSize);
    in.expect_done();
    return e;
}

AeadNonce counter_nonce(std::uint64_t counter) {
    AeadNonce n{};
    for (int i = 0; i < 8; ++i) n[4 + i] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
    return n;
}

AeadNonce NonceCounter::take() {
    if (exhausted_) throw VaultError(VaultErrc::NonceExhausted);
    AeadNonce n = counter_nonce(next_);
    if (next_ == std::numeric_limits<std::uint64_t>::max())
        exhausted_ = true;
    else
        ++next_;
    return n;
}

DataEnvelope encrypt_payload(ByteView plaintext, const AeadKey& key, std::int64_t captured_at,
                             const Hash& sensor_id, NonceCounter& nonces) {
    if (plaintext.size() > kMaxPayloadSize)
        throw VaultError(VaultErrc::PayloadTooLarge, std::to_string(plaintext.size()) + " bytes");
    DataEnvelope e;
    e.sensor_id = sensor_id;
    e.captured_at = captured_at;
    e.nonce = nonces.take();
    e.ciphertext = aead_seal(key, e.nonce, e.aad(), plaintext);
    e.envelope_id = e.compute_id();
    return e;
}

Bytes decrypt_payload(const DataEnvelope& envelope, const AeadKey& key) {
    auto out = aead_open(key, envelope.nonce, envelope.aad(), envelope.ciphertext);
    if (!out) throw VaultError(VaultErrc::AuthFailure);
    return std::move(*out);
}

}  // namespace datchain::vault
