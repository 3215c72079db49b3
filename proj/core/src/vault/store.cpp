// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/vault/store.hpp"

#include <atomic>
#include <fstream>
#include <iterator>

namespace datchain::vault {

namespace fs = std::filesystem;

BlobStore::BlobStore(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
}

fs::path BlobStore::path_for(const Hash& envelope_id) const {
    const std::string hex = envelope_id.hex();
    return root_ / hex.substr(0, 2) / hex.substr(2, 2) / hex;
}

bool BlobStore::contains(const Hash& envelope_id) const {
    return fs::exists(path_for(envelope_id));
}

Hash BlobStore::store(const DataEnvelope& envelope) {
    if (envelope.compute_id() != envelope.envelope_id)
        throw VaultError(VaultErrc::IntegrityFailure, "envelope id does not match contents");
    const fs::path target = path_for(envelope.envelope_id);
    if (fs::exists(target)) return envelope.envelope_id;
    fs::create_directories(target.parent_path());

    static std::atomic<std::uint64_t> counter{0};
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(counter.fetch_add(1));
    const Bytes data = envelope.encode();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) throw VaultError(VaultErrc::Io, "cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
    return envelope.envelope_id;
}

DataEnvelope BlobStore::fetch(const Hash& envelope_id) const {
    const fs::path p = path_for(envelope_id);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw VaultError(VaultErrc::NotFound, envelope_id.hex());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    DataEnvelope env;
    try {
        env = DataEnvelope::decode(data);
    } catch (const DecodeError& e) {
        throw VaultError(VaultErrc::IntegrityFailure, envelope_id.hex() + ": " + e.what());
    }
    if (env.envelope_id != envelope_id || env.compute_id() != envelope_id)
        throw VaultError(VaultErrc::IntegrityFailure, envelope_id.hex());
    return env;
}

}  // namespace datchain::vault
