// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/vault/watermark.hpp"

#include "datchain/common/codec.hpp"

namespace datchain::vault {

Hash derive_watermark_key(const AeadKey& master, const Hash& watermark_key_id) {
    ByteWriter w;
    w.raw(as_bytes("wm")).raw(watermark_key_id.view());
    return hmac_sha256(master, w.data());
}

Hash watermark_tag(const Hash& sub_key, const Hash& sub_id, const Hash& envelope_id) {
    ByteWriter w;
    w.raw(sub_id.view()).raw(envelope_id.view());
    return hmac_sha256(sub_key.view(), w.data());
}

WatermarkedDelivery deliver(const DataEnvelope& envelope, const market::Subscription& subscription,
                            const StreamKey& stream_key, const AeadKey& master, std::int64_t now) {
    if (now < subscription.start || now >= subscription.expiry)
        throw VaultError(VaultErrc::AccessDenied, "subscription not active");
    if (stream_key.stream_id != subscription.stream_id)
        throw VaultError(VaultErrc::AccessDenied, "envelope not on subscribed stream");
    WatermarkedDelivery d;
    d.plaintext = decrypt_payload(envelope, stream_key.secret);
    d.sub_id = subscription.sub_id;
    d.envelope_id = envelope.envelope_id;
    d.watermark_tag = watermark_tag(derive_watermark_key(master, subscription.watermark_key_id), d.sub_id,
                                    d.envelope_id);
    return d;
}

bool verify_delivery(const WatermarkedDelivery& delivery, const market::Subscription& subscription,
                     const AeadKey& master) {
    Hash expect = watermark_tag(derive_watermark_key(master, subscription.watermark_key_id), subscription.sub_id,
                                delivery.envelope_id);
    return tags_equal(expect, delivery.watermark_tag);
}

std::optional<Hash> attribute_leak(const WatermarkedDelivery& leaked,
                                   std::span<const market::Subscription> subscriptions, const AeadKey& master) {
    std::optional<Hash> found;
    for (const auto& sub : subscriptions) {
        if (!verify_delivery(leaked, sub, master)) continue;
        if (found) throw VaultError(VaultErrc::AmbiguousAttribution, found->hex() + " and " + sub.sub_id.hex());
        found = sub.sub_id;
    }
    return found;
}

}  // namespace datchain::vault
