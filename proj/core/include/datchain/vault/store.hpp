// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>

#include "datchain/vault/envelope.hpp"

namespace datchain::vault {

/// Content-addressed envelope files under root/ab/cd/<hex id>.
class BlobStore {
public:
    explicit BlobStore(std::filesystem::path root);

    /// Idempotent; returns the envelope id.
    Hash store(const DataEnvelope& envelope);

    /// Throws NotFound or IntegrityFailure.
    DataEnvelope fetch(const Hash& envelope_id) const;

    bool contains(const Hash& envelope_id) const;

    std::filesystem::path path_for(const Hash& envelope_id) const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
};

}  // namespace datchain::vault
