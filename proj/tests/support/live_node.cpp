// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "live_node.hpp"

namespace datchain::test_support {

LiveNode::LiveNode(ledger::LedgerMode mode, consensus::ConsensusConfig engine) {
    config_.ledger_mode = mode;
    config_.engine = engine;
    config_.data_dir = dir_ / "node";
    config_.http_threads = 4;
    start();
}

LiveNode::~LiveNode() { stop(); }

void LiveNode::start() {
    node_ = service::Node::open(config_, [this] { return clock.load(); });
    server_ = std::make_unique<service::HttpServer>(*node_);
    port_ = server_->bind("127.0.0.1", 0);
    if (port_ < 0) throw std::runtime_error("bind failed");
    server_->start();
}

void LiveNode::stop() {
    if (server_) server_->stop();
    server_.reset();
    node_.reset();
}

service::ApiClient LiveNode::client(const std::string& label) {
    return service::ApiClient("127.0.0.1", port_, key(label));
}

}  // namespace datchain::test_support
