// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <atomic>
#include <memory>

#include "datchain/service/client.hpp"
#include "datchain/service/http_server.hpp"
#include "support.hpp"

namespace datchain::test_support {

/// Node plus HTTP server on an ephemeral port over a temp data dir, with a
/// settable clock.
class LiveNode {
public:
    explicit LiveNode(ledger::LedgerMode mode, consensus::ConsensusConfig engine = consensus::Pow{4});
    ~LiveNode();

    void start();
    void stop();
    void restart() {
        stop();
        start();
    }

    service::ApiClient client(const std::string& label);
    service::Node& node() { return *node_; }
    int port() const { return port_; }
    service::NodeConfig& config() { return config_; }

    std::atomic<std::int64_t> clock{1'700'000'000};

private:
    TempDir dir_;
    service::NodeConfig config_;
    std::unique_ptr<service::Node> node_;
    std::unique_ptr<service::HttpServer> server_;
    int port_ = -1;
};

}  // namespace datchain::test_support
