// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <memory>
#include <string>

#include "datchain/market/actions.hpp"
#include "datchain/service/json.hpp"

namespace httplib {
class Client;
}

namespace datchain::service {

struct ApiResponse {
    int status = 0;
    Json body;
    std::string tx_header;
};

/// Thin HTTP client that holds one account key and signs requests locally.
class ApiClient {
public:
    ApiClient(const std::string& host, int port, KeyPair keys);
    ~ApiClient();
    ApiClient(ApiClient&&) noexcept;
    ApiClient& operator=(ApiClient&&) noexcept;

    const KeyPair& keys() const { return keys_; }
    Address address() const { return keys_.address(); }
    const std::string& token() const { return token_; }
    void set_token(std::string token) { token_ = std::move(token); }

    ApiResponse get(const std::string& path);
    ApiResponse post(const std::string& path, const Json& body);

    /// Server time from /metrics.
    std::int64_t server_time();
    std::uint64_t next_sequence();

    ApiResponse sign_up(market::Role role);
    ApiResponse sign_in();
    ApiResponse register_sensor(const market::SensorMetadata& metadata, std::uint64_t price, std::uint64_t period,
                                const std::string& schema_tag);
    ApiResponse publish(const Hash& sensor_id, ByteView payload, std::int64_t captured_at);
    ApiResponse subscribe(const Hash& stream_id);
    ApiResponse fetch(const Hash& envelope_id);

private:
    std::string sign(const market::Action& action, std::uint64_t sequence) const;

    std::unique_ptr<httplib::Client> http_;
    KeyPair keys_;
    std::string token_;
};

}  // namespace datchain::service
