// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "datchain/service/node.hpp"

namespace httplib {
class Server;
}

namespace datchain::service {

/// HTTP status for an exception escaping a handler.
int status_for(const std::exception& e);

/// JSON front end of a Node. Routes are documented in docs/api.md.
class HttpServer {
public:
    explicit HttpServer(Node& node);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);

    /// Serves on the calling thread until stop().
    bool run();

    /// Serves on a background thread.
    void start();

    void stop();

private:
    void install_routes();

    Node& node_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

}  // namespace datchain::service
