// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/vault/keyring.hpp"

#include <sys/stat.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>

#include "datchain/common/codec.hpp"

namespace datchain::vault {

namespace fs = std::filesystem;

namespace {

constexpr std::uint32_t kKeyFileVersion = 1;

Hash key_id_of(const Hash& stream_id, const AeadKey& secret) {
    return Sha256().update("stream-key").update(stream_id).update(ByteView(secret)).finish();
}

}  // namespace

KeyRing::KeyRing(KeyRing&& other) noexcept
    : path_(std::move(other.path_)), master_(other.master_), keys_(std::move(other.keys_)) {}

KeyRing KeyRing::in_memory() {
    KeyRing ring;
    random_bytes(ring.master_);
    return ring;
}

KeyRing KeyRing::open(const fs::path& path) {
    KeyRing ring;
    ring.path_ = path;
    if (fs::exists(path)) {
        ring.load();
    } else {
        random_bytes(ring.master_);
        ring.save();
    }
    return ring;
}

void KeyRing::load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw VaultError(VaultErrc::Io, "cannot read " + path_.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        ByteReader r(data);
        auto magic = r.raw(4);
        if (!std::equal(magic.begin(), magic.end(), "DCKR")) throw DecodeError("bad magic");
        if (r.u32() != kKeyFileVersion) throw DecodeError("unsupported version");
        auto m = r.raw(32);
        std::copy(m.begin(), m.end(), master_.begin());
        const std::uint32_t count = r.u32();
        for (std::uint32_t i = 0; i < count; ++i) {
            Bytes rec = r.bytes(1024);
            ByteReader rr(rec);
            StreamKey k;
            k.stream_id = Hash::from_bytes(rr.raw(32));
            k.key_id = Hash::from_bytes(rr.raw(32));
            auto s = rr.raw(32);
            std::copy(s.begin(), s.end(), k.secret.begin());
            k.next_nonce = rr.u64();
            rr.expect_done();
            keys_[k.stream_id] = k;
        }
        r.expect_done();
    } catch (const DecodeError& e) {
        throw VaultError(VaultErrc::Malformed, path_.string() + ": " + e.what());
    }
}

void KeyRing::save() const {
    if (path_.empty()) return;
    ByteWriter w;
    w.raw(as_bytes("DCKR")).u32(kKeyFileVersion).raw(master_).u32(static_cast<std::uint32_t>(keys_.size()));
    for (const auto& [_, k] : keys_) {
        ByteWriter rec;
        rec.raw(k.stream_id.view()).raw(k.key_id.view()).raw(k.secret).u64(k.next_nonce);
        w.bytes(rec.data());
    }
    fs::path tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw VaultError(VaultErrc::Io, "cannot write " + tmp.string());
        ::chmod(tmp.c_str(), 0600);
        out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.size()));
        out.flush();
        if (!out) throw VaultError(VaultErrc::Io, "short write " + tmp.string());
    }
    fs::rename(tmp, path_);
}

StreamKey& KeyRing::key_locked(const Hash& stream_id) {
    auto it = keys_.find(stream_id);
    if (it != keys_.end()) return it->second;
    StreamKey k;
    k.stream_id = stream_id;
    random_bytes(k.secret);
    k.key_id = key_id_of(stream_id, k.secret);
    auto& ref = keys_[stream_id] = k;
    save();
    return ref;
}

StreamKey KeyRing::key_for(const Hash& stream_id) {
    std::lock_guard lock(mu_);
    return key_locked(stream_id);
}

std::optional<StreamKey> KeyRing::find(const Hash& stream_id) const {
    std::lock_guard lock(mu_);
    auto it = keys_.find(stream_id);
    if (it == keys_.end()) return std::nullopt;
    return it->second;
}

DataEnvelope KeyRing::seal(const Hash& stream_id, ByteView plaintext, std::int64_t captured_at,
                           const Hash& sensor_id) {
    std::lock_guard lock(mu_);
    StreamKey& k = key_locked(stream_id);
    NonceCounter counter(k.next_nonce);
    if (k.next_nonce == std::numeric_limits<std::uint64_t>::max()) throw VaultError(VaultErrc::NonceExhausted);
    DataEnvelope env = encrypt_payload(plaintext, k.secret, captured_at, sensor_id, counter);
    k.next_nonce = counter.next();
    save();
    return env;
}

std::size_t KeyRing::size() const {
    std::lock_guard lock(mu_);
    return keys_.size();
}

}  // namespace datchain::vault
