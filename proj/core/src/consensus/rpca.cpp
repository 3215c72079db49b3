// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/rpca.hpp"

#include <map>
#include <optional>
#include <set>

namespace datchain::consensus {

using sim::Message;
using sim::MsgType;
using sim::NodeId;

bool RpcaOutcome::agreement() const {
    const std::vector<Hash>* first = nullptr;
    for (std::size_t i = 0; i < per_node.size(); ++i) {
        if (!honest[i]) continue;
        if (!first) {
            first = &per_node[i];
        } else if (per_node[i] != *first) {
            return false;
        }
    }
    return true;
}

bool rpca_meets_threshold(std::size_t yes, std::size_t total, double threshold) {
    return static_cast<double>(yes) >= threshold * static_cast<double>(total) - 1e-9;
}

RpcaOutcome rpca_run(sim::MessageBus& bus, std::span<const RpcaVoter> nodes, std::span<const Hash> candidates,
                     const Rpca& config, Rng& /*rng*/) {
    validate_config(config);
    const auto n = static_cast<NodeId>(nodes.size());
    for (const auto& v : nodes) {
        if (v.behavior == Behavior::Honest && v.approves.size() != candidates.size()) {
            throw ConsensusError(ConsensusErrc::InvalidConfig, "vote vector does not match candidate count");
        }
    }
    const auto start = bus.sent();

    std::map<Hash, std::size_t> position;
    for (std::size_t c = 0; c < candidates.size(); ++c) position.emplace(candidates[c], c);

    // approved_at[node][candidate] = round, 0 while pending.
    std::vector<std::vector<unsigned>> approved_at(n, std::vector<unsigned>(candidates.size(), 0));
    auto honest = [&](NodeId i) { return nodes[i].behavior == Behavior::Honest; };
    auto pending_anywhere = [&] {
        for (NodeId i = 0; i < n; ++i) {
            if (!honest(i)) continue;
            for (auto r : approved_at[i])
                if (r == 0) return true;
        }
        return false;
    };

    RpcaOutcome out;
    for (unsigned round = 1; round <= config.max_rounds && pending_anywhere(); ++round) {
        out.rounds = round;
        // yes[node][candidate] = distinct yes voters seen, including own.
        std::vector<std::vector<std::set<NodeId>>> yes(n, std::vector<std::set<NodeId>>(candidates.size()));
        for (NodeId i = 0; i < n; ++i) {
            const auto b = nodes[i].behavior;
            if (b == Behavior::Silent) continue;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                bool vote = b == Behavior::Honest && nodes[i].approves[c];
                if (vote) yes[i][c].insert(i);
                bus.broadcast(Message{MsgType::Vote, i, 0, round, candidates[c], vote ? std::uint8_t{1} : std::uint8_t{0}}, n);
            }
        }
        for (const auto& m : bus.flush()) {
            if (m.type != MsgType::Vote || m.value != 1) continue;
            auto it = position.find(m.subject);
            if (it != position.end()) yes[m.to][it->second].insert(m.from);
        }
        for (NodeId i = 0; i < n; ++i) {
            if (!honest(i)) continue;
            for (std::size_t c = 0; c < candidates.size(); ++c) {
                if (approved_at[i][c] == 0 && rpca_meets_threshold(yes[i][c].size(), n, config.threshold)) {
                    approved_at[i][c] = round;
                }
            }
        }
    }

    out.per_node.resize(n);
    out.honest.resize(n);
    for (NodeId i = 0; i < n; ++i) out.honest[i] = honest(i);
    std::optional<NodeId> reference;
    for (NodeId i = 0; i < n; ++i) {
        if (!honest(i)) continue;
        if (!reference) reference = i;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (approved_at[i][c] != 0) out.per_node[i].push_back(candidates[c]);
        }
    }
    if (reference) {
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (approved_at[*reference][c] != 0) {
                out.approved.push_back(candidates[c]);
                out.approved_round.push_back(approved_at[*reference][c]);
            }
        }
    }
    out.messages = bus.sent() - start;
    return out;
}

RpcaOutcome rpca_run(std::span<const RpcaVoter> nodes, std::span<const Hash> candidates, const Rpca& config,
                     std::uint64_t seed) {
    Rng rng(seed);
    sim::MessageBus bus(sim::LinkModel{}, rng.next());
    return rpca_run(bus, nodes, candidates, config, rng);
}

}  // namespace datchain::consensus
