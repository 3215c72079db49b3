// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "datchain/common/error.hpp"
#include "datchain/ledger/chain.hpp"
#include "datchain/ledger/transaction.hpp"

namespace datchain::tangle {

enum class TangleErrc {
    InvalidTransaction,
    Exhausted,
    UnknownSite,
    InvalidParent,
    InvalidProof,
    BadSiteId,
    Duplicate,
};

const char* to_string(TangleErrc code);

using TangleError = CodedError<TangleErrc>;

/// Default attachment proof-of-work, in leading zero bits of the site id.
inline constexpr unsigned kDefaultAttachDifficulty = 4;

/// A DAG ledger unit approving two earlier sites. Only the genesis site has
/// no payload and names itself as both parents.
struct TangleSite {
    Hash site_id;
    Hash parent_a;
    Hash parent_b;
    std::optional<ledger::Transaction> payload;
    std::uint64_t nonce = 0;

    bool is_genesis() const { return !payload.has_value(); }

    Bytes encode() const;
    static TangleSite decode(ByteView data);

    bool operator==(const TangleSite&) const = default;
};

/// SHA-256 over version ‖ parent_a ‖ parent_b ‖ encoded payload ‖ nonce.
/// The same digest carries the attachment proof-of-work.
Hash compute_site_id(const Hash& parent_a, const Hash& parent_b, const ledger::Transaction& payload,
                     std::uint64_t nonce);

TangleSite genesis_site();

enum class TipStrategy { Uniform, WeightedWalk };

const char* to_string(TipStrategy s);
TipStrategy parse_tip_strategy(std::string_view text);

class TangleState {
public:
    /// Genesis-only tangle.
    TangleState();

    bool contains(const Hash& id) const { return sites_.contains(id); }
    const TangleSite& site(const Hash& id) const;
    std::size_t size() const { return order_.size(); }
    const std::set<Hash>& tips() const { return tips_; }
    /// Direct approvers of `id`, sorted by id. Empty for tips.
    const std::set<Hash>& approvers(const Hash& id) const;
    /// Insertion order; parents always precede children.
    const std::vector<Hash>& order() const { return order_; }
    const Hash& genesis_id() const { return order_.front(); }
    const ledger::KeyRegistry& registry() const { return registry_; }
    /// Site holding the transaction with this id, if any.
    std::optional<Hash> site_of_tx(const Hash& tx_id) const;

    /// Hash over the encodings of all sites sorted by id, independent of
    /// arrival order.
    Hash digest() const;

    friend void insert_site(TangleState& state, const TangleSite& site, unsigned difficulty_bits);

private:
    std::map<Hash, TangleSite> sites_;
    std::map<Hash, std::set<Hash>> approvers_;
    std::set<Hash> tips_;
    std::vector<Hash> order_;
    std::unordered_map<Hash, Hash> tx_sites_;
    ledger::KeyRegistry registry_;
};

inline TangleState tangle_genesis() { return TangleState{}; }

/// Two tips. Uniform draws each independently from the tip set; the
/// weighted walk starts at genesis and steps to a direct approver with
/// probability proportional to its cumulative weight until it reaches a tip.
std::pair<Hash, Hash> select_tips(const TangleState& state, TipStrategy strategy, std::uint64_t seed);

/// Tip selection plus attachment proof-of-work. Does not modify the state.
TangleSite make_site(const TangleState& state, const ledger::Transaction& tx, TipStrategy strategy,
                     unsigned difficulty_bits, std::uint64_t seed,
                     std::uint64_t max_iters = std::uint64_t{1} << 32);

/// Validates and inserts a fully formed site in place.
void insert_site(TangleState& state, const TangleSite& site, unsigned difficulty_bits);

TangleState attach(TangleState state, const ledger::Transaction& tx, TipStrategy strategy,
                   unsigned difficulty_bits, std::uint64_t seed);

/// 1 + number of distinct sites that transitively approve `id`.
std::uint64_t cumulative_weight(const TangleState& state, const Hash& id);

/// Cumulative weight of every site, computed in one pass over the reverse
/// insertion order.
std::unordered_map<Hash, std::uint64_t> all_weights(const TangleState& state);

bool is_confirmed(const TangleState& state, const Hash& id, std::uint64_t weight_threshold);

/// Structural verification of a site sequence in insertion order: genesis
/// first, ids recompute, parents already present, proof-of-work, and
/// transaction signatures.
ledger::VerifyReport verify_sites(std::span<const TangleSite> sites, unsigned difficulty_bits);

}  // namespace datchain::tangle
