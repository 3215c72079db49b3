// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "datchain/common/rng.hpp"
#include "datchain/ledger/block.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/tangle/tangle.hpp"

namespace datchain::test_support {

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

KeyPair key(const std::string& label);

/// SignUp for a fresh key plus transfers between signed-up accounts, ready
/// to be cut into blocks. Balances are ignored; only signatures and
/// sequences matter at the ledger layer.
std::vector<ledger::Transaction> random_transactions(Rng& rng, std::size_t count, const std::string& label);

/// Genesis plus `blocks` blocks of 0..4 transactions each, mined to
/// `difficulty_bits`.
std::vector<ledger::Block> random_chain(Rng& rng, std::size_t blocks, unsigned difficulty_bits = 0);

/// Tangle of `sites` non-genesis sites with parents drawn uniformly from
/// all earlier sites.
tangle::TangleState random_tangle(Rng& rng, std::size_t sites);

/// Brute-force cumulative weights: every site's ancestor set by DFS over
/// parent links, then a count of the sets containing each site.
std::map<Hash, std::uint64_t> brute_weights(const tangle::TangleState& state);

/// Sites with no approver, found by scanning every site's parents.
std::set<Hash> brute_tips(const tangle::TangleState& state);

std::string read_text(const std::filesystem::path& p);

}  // namespace datchain::test_support
