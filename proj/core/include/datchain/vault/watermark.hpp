// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <span>

#include "datchain/market/market.hpp"
#include "datchain/vault/envelope.hpp"
#include "datchain/vault/keyring.hpp"

namespace datchain::vault {

/// Plaintext with a detached per-subscription tag.
struct WatermarkedDelivery {
    Bytes plaintext;
    Hash watermark_tag;
    Hash sub_id;
    Hash envelope_id;
};

/// HMAC(master, "wm" ‖ key_id).
Hash derive_watermark_key(const AeadKey& master, const Hash& watermark_key_id);

/// HMAC(sub_key, sub_id ‖ envelope_id).
Hash watermark_tag(const Hash& sub_key, const Hash& sub_id, const Hash& envelope_id);

/// Throws AccessDenied unless start <= now < expiry and the key belongs to
/// the subscribed stream; AuthFailure on tampered envelopes.
WatermarkedDelivery deliver(const DataEnvelope& envelope, const market::Subscription& subscription,
                            const StreamKey& stream_key, const AeadKey& master, std::int64_t now);

bool verify_delivery(const WatermarkedDelivery& delivery, const market::Subscription& subscription,
                     const AeadKey& master);

/// Subscription whose derived key authenticates the tag, or nullopt when
/// none does. Throws AmbiguousAttribution if several do.
std::optional<Hash> attribute_leak(const WatermarkedDelivery& leaked,
                                   std::span<const market::Subscription> subscriptions, const AeadKey& master);

}  // namespace datchain::vault
