// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "datchain/common/rng.hpp"
#include "datchain/crypto/hash.hpp"

namespace datchain::sim {

using NodeId = std::uint32_t;
using Tick = std::uint64_t;

enum class MsgType : std::uint8_t {
    TxAnnounce,
    BlockAnnounce,
    SiteAnnounce,
    PrePrepare,
    Prepare,
    Commit,
    Decided,
    ViewChange,
    Vote,
    Query,
    Response,
};

struct Message {
    MsgType type = MsgType::Vote;
    NodeId from = 0;
    NodeId to = 0;
    std::uint64_t round = 0;
    Hash subject;
    /// Vote / opinion bit, or a small scalar.
    std::uint8_t value = 0;
    /// Filled in by the bus on delivery.
    Tick arrival = 0;
};

struct LinkModel {
    Tick min_delay = 1;
    Tick max_delay = 1;
    /// Independent Bernoulli loss per transmission, in [0, 1).
    double drop_rate = 0.0;
};

/// Seeded in-process transport with a discrete tick clock. A dropped
/// transmission is retried after max_delay + 1 ticks, so every message is
/// eventually delivered and each attempt counts as one message sent. The
/// retry schedule is resolved at send time; delivery order is by
/// (arrival tick, send sequence).
class MessageBus {
public:
    MessageBus(LinkModel link, std::uint64_t seed);

    void send(Message m);
    /// Sends to every node in [0, node_count) except `m.from`.
    void broadcast(Message m, NodeId node_count);

    /// Delivers everything in flight, advancing the clock to the last
    /// arrival. Returned in delivery order.
    std::vector<Message> flush();
    /// Delivers messages whose arrival tick is <= now(), clock unchanged.
    std::vector<Message> deliver_due();

    Tick now() const { return now_; }
    void advance(Tick ticks) { now_ += ticks; }

    std::uint64_t sent() const { return sent_; }
    std::uint64_t delivered() const { return delivered_; }
    std::uint64_t dropped() const { return dropped_; }
    std::size_t in_flight() const { return queue_.size(); }

    const LinkModel& link() const { return link_; }

private:
    struct Pending {
        Tick arrival;
        std::uint64_t seq;
        Message msg;
        bool operator>(const Pending& o) const {
            return arrival != o.arrival ? arrival > o.arrival : seq > o.seq;
        }
    };

    LinkModel link_;
    Rng rng_;
    Tick now_ = 0;
    std::uint64_t seq_ = 0;
    std::uint64_t sent_ = 0;
    std::uint64_t delivered_ = 0;
    std::uint64_t dropped_ = 0;
    std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
};

}  // namespace datchain::sim
