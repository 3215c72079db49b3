// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/fpc.hpp"

#include <numeric>
#include <optional>

namespace datchain::consensus {

using sim::Message;
using sim::MsgType;
using sim::NodeId;

bool FpcOutcome::agreement() const {
    std::optional<bool> v;
    for (std::size_t i = 0; i < opinion.size(); ++i) {
        if (!honest[i]) continue;
        if (v && *v != opinion[i]) return false;
        v = opinion[i];
    }
    return true;
}

bool FpcOutcome::consensus_value() const {
    if (!agreement()) return false;
    for (std::size_t i = 0; i < opinion.size(); ++i)
        if (honest[i]) return opinion[i];
    return false;
}

FpcOutcome fpc_run(sim::MessageBus& bus, const std::vector<bool>& initial, std::span<const Behavior> behaviors,
                   const Fpc& config, Rng& rng) {
    validate_config(config);
    if (initial.size() != behaviors.size()) {
        throw ConsensusError(ConsensusErrc::InvalidConfig, "opinion and behaviour lists differ in length");
    }
    const auto n = static_cast<NodeId>(initial.size());
    const auto start = bus.sent();

    FpcOutcome out;
    out.opinion.assign(initial.begin(), initial.end());
    out.finalized.assign(n, false);
    out.finalized_round.assign(n, 0);
    out.honest.resize(n);
    for (NodeId i = 0; i < n; ++i) out.honest[i] = behaviors[i] == Behavior::Honest;

    std::vector<unsigned> stable(n, 0);
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    const NodeId k = static_cast<NodeId>(std::min<std::size_t>(config.k, n));

    auto all_final = [&] {
        for (NodeId i = 0; i < n; ++i)
            if (out.honest[i] && !out.finalized[i]) return false;
        return true;
    };

    for (unsigned round = 1; round <= config.max_rounds && !all_final(); ++round) {
        out.rounds = round;
        const double threshold = rng.uniform(config.theta_low, config.theta_high);

        std::size_t honest_yes = 0, honest_no = 0;
        for (NodeId i = 0; i < n; ++i) {
            if (out.honest[i]) (out.opinion[i] ? honest_yes : honest_no)++;
        }
        const bool minority = honest_yes < honest_no;

        std::vector<std::size_t> yes(n, 0), answers(n, 0);
        for (NodeId i = 0; i < n; ++i) {
            if (!out.honest[i] || out.finalized[i]) continue;
            // Partial Fisher-Yates: the first k slots become the sample.
            for (NodeId s = 0; s < k; ++s) {
                auto j = s + static_cast<NodeId>(rng.below(n - s));
                std::swap(pool[s], pool[j]);
                const NodeId peer = pool[s];
                if (peer == i) {
                    ++answers[i];
                    yes[i] += out.opinion[i] ? 1 : 0;
                } else {
                    bus.send(Message{MsgType::Query, i, peer, round, Hash{}, 0});
                }
            }
        }
        for (const auto& q : bus.flush()) {
            if (q.type != MsgType::Query) continue;
            bool answer = false;
            switch (behaviors[q.to]) {
                case Behavior::Honest: answer = out.opinion[q.to]; break;
                case Behavior::Silent: continue;
                case Behavior::VoteNo: answer = false; break;
                case Behavior::MinorityMax: answer = minority; break;
                case Behavior::Equivocate: answer = rng.chance(0.5); break;
            }
            bus.send(Message{MsgType::Response, q.to, q.from, round, Hash{}, static_cast<std::uint8_t>(answer)});
        }
        for (const auto& r : bus.flush()) {
            if (r.type != MsgType::Response) continue;
            ++answers[r.to];
            yes[r.to] += r.value;
        }

        for (NodeId i = 0; i < n; ++i) {
            if (!out.honest[i] || out.finalized[i]) continue;
            bool next = out.opinion[i];
            if (answers[i] > 0) {
                next = static_cast<double>(yes[i]) >= threshold * static_cast<double>(answers[i]);
            }
            stable[i] = next == out.opinion[i] ? stable[i] + 1 : 1;
            out.opinion[i] = next;
            if (stable[i] >= config.ell) {
                out.finalized[i] = true;
                out.finalized_round[i] = round;
            }
        }
    }
    out.non_termination = !all_final();
    out.messages = bus.sent() - start;
    return out;
}

FpcOutcome fpc_run(const std::vector<bool>& initial, std::span<const Behavior> behaviors, const Fpc& config,
                   std::uint64_t seed) {
    Rng rng(seed);
    sim::MessageBus bus(sim::LinkModel{}, rng.next());
    return fpc_run(bus, initial, behaviors, config, rng);
}

}  // namespace datchain::consensus
