// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/consensus/pbft.hpp"

#include "datchain/common/codec.hpp"

#include <map>
#include <set>

namespace datchain::consensus {

using sim::Message;
using sim::MsgType;
using sim::NodeId;

bool PbftOutcome::all_committed() const {
    std::optional<Hash> v;
    for (const auto& r : replicas) {
        if (!r.honest) continue;
        if (!r.committed) return false;
        if (v && *v != r.value) return false;
        v = r.value;
    }
    return true;
}

bool PbftOutcome::none_committed() const {
    for (const auto& r : replicas)
        if (r.honest && r.committed) return false;
    return true;
}

bool PbftOutcome::conflict() const {
    std::optional<Hash> v;
    for (const auto& r : replicas) {
        if (!r.honest || !r.committed) continue;
        if (v && *v != r.value) return true;
        v = r.value;
    }
    return false;
}

std::optional<Hash> PbftOutcome::decision() const {
    for (const auto& r : replicas)
        if (r.honest && r.committed) return r.value;
    return std::nullopt;
}

namespace {

constexpr std::uint8_t kYes = 1;
constexpr std::uint8_t kNo = 0;

Hash conflicting_value(const Hash& v, std::uint64_t view) {
    ByteWriter w;
    w.raw(v.view()).u64(view);
    return Sha256().update("pbft-equivocation:").update(w.data()).finish();
}

struct Replica {
    Behavior behavior = Behavior::Honest;
    std::optional<Hash> locked;
    std::uint64_t locked_view = 0;
    std::optional<Hash> pre_prepared;
    bool committed = false;
    Hash value;
};

// Distinct senders per (recipient, value) for yes votes.
using Tally = std::vector<std::map<Hash, std::set<NodeId>>>;

class Instance {
public:
    Instance(sim::MessageBus& bus, const Hash& proposal, std::span<const Behavior> behaviors, Rng& rng)
        : bus_(bus), proposal_(proposal), rng_(rng), n_(static_cast<NodeId>(behaviors.size())) {
        replicas_.resize(n_);
        for (NodeId i = 0; i < n_; ++i) replicas_[i].behavior = behaviors[i];
    }

    PbftOutcome run() {
        const auto start = bus_.sent();
        PbftOutcome out;
        for (std::uint64_t view = 0; view < n_; ++view) {
            ++out.views;
            run_view(view);
            if (all_honest_committed()) break;
        }
        for (const auto& r : replicas_) {
            out.replicas.push_back(PbftReplica{r.behavior == Behavior::Honest, r.committed, r.value});
        }
        out.messages = bus_.sent() - start;
        return out;
    }

private:
    bool honest(NodeId i) const { return replicas_[i].behavior == Behavior::Honest; }

    bool any_honest_committed() const {
        for (NodeId i = 0; i < n_; ++i)
            if (honest(i) && replicas_[i].committed) return true;
        return false;
    }

    bool all_honest_committed() const {
        for (NodeId i = 0; i < n_; ++i)
            if (honest(i) && !replicas_[i].committed) return false;
        return true;
    }

    // Highest view holding a prepared certificate for `value`.
    std::optional<std::uint64_t> certified(const Hash& value) const {
        std::optional<std::uint64_t> best;
        for (const auto& [v, view] : certificates_)
            if (v == value && (!best || view > *best)) best = view;
        return best;
    }

    // A replica locked on another value only moves when the new value
    // carries a certificate at least as recent as its lock.
    bool acceptable(const Replica& r, const Hash& value) const {
        if (!r.locked || *r.locked == value) return true;
        auto cert = certified(value);
        return cert && *cert >= r.locked_view;
    }

    // Byzantine send pattern shared by every voting phase.
    void byzantine_send(NodeId from, MsgType type, std::uint64_t view, const Hash& value) {
        switch (replicas_[from].behavior) {
            case Behavior::Silent:
            case Behavior::Honest:
                return;
            case Behavior::VoteNo:
            case Behavior::MinorityMax:
                bus_.broadcast(Message{type, from, 0, view, value, kNo}, n_);
                return;
            case Behavior::Equivocate: {
                auto other = conflicting_value(value, view);
                for (NodeId to = 0; to < n_; ++to) {
                    if (to == from) continue;
                    bus_.send(Message{type, from, to, view, rng_.chance(0.5) ? value : other, kYes});
                }
                return;
            }
        }
    }

    Tally collect(MsgType type) {
        Tally tally(n_);
        for (const auto& m : bus_.flush()) {
            if (m.type == type && m.value == kYes) tally[m.to][m.subject].insert(m.from);
        }
        return tally;
    }

    // Honest replicas report their lock to the incoming primary, which
    // re-proposes the most recently certified value it hears about.
    Hash choose_value(NodeId primary, std::uint64_t view) {
        const auto& p = replicas_[primary];
        std::optional<Hash> best = p.locked;
        std::uint64_t best_view = p.locked ? p.locked_view : 0;
        if (view == 0) return best.value_or(proposal_);
        for (NodeId i = 0; i < n_; ++i) {
            const auto& r = replicas_[i];
            if (i == primary || !honest(i) || !r.locked) continue;
            bus_.send(Message{MsgType::ViewChange, i, primary, r.locked_view, *r.locked, kYes});
        }
        for (const auto& m : bus_.flush()) {
            if (m.type != MsgType::ViewChange || m.to != primary) continue;
            auto cert = certified(m.subject);
            if (!cert || *cert < m.round) continue;
            if (!best || m.round > best_view) {
                best = m.subject;
                best_view = m.round;
            }
        }
        return best.value_or(proposal_);
    }

    void run_view(std::uint64_t view) {
        const NodeId primary = static_cast<NodeId>(view % n_);
        const unsigned quorum = pbft_quorum(n_);
        for (auto& r : replicas_) r.pre_prepared.reset();

        // Pre-prepare.
        auto& p = replicas_[primary];
        if (honest(primary)) {
            auto value = choose_value(primary, view);
            p.pre_prepared = value;
            bus_.broadcast(Message{MsgType::PrePrepare, primary, 0, view, value, kYes}, n_);
        } else if (p.behavior == Behavior::Equivocate) {
            byzantine_send(primary, MsgType::PrePrepare, view, proposal_);
        }
        for (const auto& m : bus_.flush()) {
            if (m.type == MsgType::PrePrepare && m.from == primary && !replicas_[m.to].pre_prepared) {
                replicas_[m.to].pre_prepared = m.subject;
            }
        }

        // Prepare.
        std::vector<std::optional<Hash>> endorsed(n_);
        for (NodeId i = 0; i < n_; ++i) {
            auto& r = replicas_[i];
            if (!honest(i)) {
                byzantine_send(i, MsgType::Prepare, view, r.pre_prepared.value_or(proposal_));
                continue;
            }
            if (!r.pre_prepared || !acceptable(r, *r.pre_prepared)) continue;
            endorsed[i] = r.pre_prepared;
            bus_.broadcast(Message{MsgType::Prepare, i, 0, view, *r.pre_prepared, kYes}, n_);
        }
        auto prepares = collect(MsgType::Prepare);

        std::vector<bool> prepared(n_, false);
        for (NodeId i = 0; i < n_; ++i) {
            if (!honest(i) || !endorsed[i]) continue;
            auto votes = prepares[i][*endorsed[i]].size() + 1;  // own prepare
            if (votes >= quorum) {
                prepared[i] = true;
                replicas_[i].locked = endorsed[i];
                replicas_[i].locked_view = view;
                certificates_.emplace(*endorsed[i], view);
            }
        }

        // Commit.
        for (NodeId i = 0; i < n_; ++i) {
            if (!honest(i)) {
                byzantine_send(i, MsgType::Commit, view, replicas_[i].pre_prepared.value_or(proposal_));
                continue;
            }
            if (prepared[i]) bus_.broadcast(Message{MsgType::Commit, i, 0, view, *endorsed[i], kYes}, n_);
        }
        auto commits = collect(MsgType::Commit);
        for (NodeId i = 0; i < n_; ++i) {
            if (!honest(i) || !prepared[i] || replicas_[i].committed) continue;
            if (commits[i][*endorsed[i]].size() + 1 >= quorum) {
                replicas_[i].committed = true;
                replicas_[i].value = *endorsed[i];
            }
        }

        // Decision echo.
        if (!any_honest_committed()) return;
        for (NodeId i = 0; i < n_; ++i) {
            if (!honest(i)) {
                if (replicas_[i].behavior == Behavior::Equivocate) {
                    byzantine_send(i, MsgType::Decided, view, proposal_);
                }
                continue;
            }
            if (replicas_[i].committed) {
                bus_.broadcast(Message{MsgType::Decided, i, 0, view, replicas_[i].value, kYes}, n_);
            }
        }
        auto decided = collect(MsgType::Decided);
        const std::size_t adopt = pbft_max_faults(n_) + 1;
        for (NodeId i = 0; i < n_; ++i) {
            auto& r = replicas_[i];
            if (!honest(i) || r.committed) continue;
            for (const auto& [value, senders] : decided[i]) {
                if (senders.size() >= adopt) {
                    r.committed = true;
                    r.value = value;
                    break;
                }
            }
        }
    }

    sim::MessageBus& bus_;
    Hash proposal_;
    Rng& rng_;
    NodeId n_;
    std::vector<Replica> replicas_;
    std::set<std::pair<Hash, std::uint64_t>> certificates_;
};

}  // namespace

PbftOutcome pbft_round(sim::MessageBus& bus, const Hash& proposal, std::span<const Behavior> behaviors, Rng& rng) {
    if (behaviors.empty()) throw ConsensusError(ConsensusErrc::InvalidConfig, "pbft needs at least one replica");
    return Instance(bus, proposal, behaviors, rng).run();
}

PbftOutcome pbft_round(const Hash& proposal, std::span<const Behavior> behaviors, std::uint64_t seed) {
    Rng rng(seed);
    sim::MessageBus bus(sim::LinkModel{}, rng.next());
    return pbft_round(bus, proposal, behaviors, rng);
}

}  // namespace datchain::consensus
