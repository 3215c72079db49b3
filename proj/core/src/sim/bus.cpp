// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "datchain/sim/bus.hpp"

#include <stdexcept>

namespace datchain::sim {

MessageBus::MessageBus(LinkModel link, std::uint64_t seed) : link_(link), rng_(seed) {
    if (link_.min_delay > link_.max_delay) throw std::invalid_argument("min_delay > max_delay");
    if (!(link_.drop_rate >= 0.0 && link_.drop_rate < 1.0)) {
        throw std::invalid_argument("drop_rate must be in [0, 1)");
    }
}

void MessageBus::send(Message m) {
    Tick t = now_;
    for (;;) {
        ++sent_;
        if (link_.drop_rate > 0.0 && rng_.chance(link_.drop_rate)) {
            ++dropped_;
            t += link_.max_delay + 1;
            continue;
        }
        break;
    }
    Tick delay = link_.min_delay + rng_.below(link_.max_delay - link_.min_delay + 1);
    m.arrival = t + delay;
    queue_.push(Pending{m.arrival, seq_++, m});
}

void MessageBus::broadcast(Message m, NodeId node_count) {
    for (NodeId to = 0; to < node_count; ++to) {
        if (to == m.from) continue;
        m.to = to;
        send(m);
    }
}

std::vector<Message> MessageBus::flush() {
    std::vector<Message> out;
    out.reserve(queue_.size());
    while (!queue_.empty()) {
        out.push_back(queue_.top().msg);
        queue_.pop();
    }
    delivered_ += out.size();
    if (!out.empty() && out.back().arrival > now_) now_ = out.back().arrival;
    return out;
}

std::vector<Message> MessageBus::deliver_due() {
    std::vector<Message> out;
    while (!queue_.empty() && queue_.top().arrival <= now_) {
        out.push_back(queue_.top().msg);
        queue_.pop();
    }
    delivered_ += out.size();
    return out;
}

}  // namespace datchain::sim
