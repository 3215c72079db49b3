// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <json.hpp>

#include "datchain/ledger/block.hpp"
#include "datchain/market/market.hpp"
#include "datchain/service/node.hpp"
#include "datchain/tangle/tangle.hpp"

namespace datchain::service {

using Json = nlohmann::json;

// Wire encodings. Hashes and addresses are lowercase hex, binary blobs are
// standard base64. All throw std::invalid_argument on bad input.

Hash hash_field(const Json& body, const char* name);
std::string string_field(const Json& body, const char* name);
std::uint64_t u64_field(const Json& body, const char* name);
std::int64_t i64_field(const Json& body, const char* name);
Bytes base64_field(const Json& body, const char* name);
Signature signature_field(const Json& body, const char* name);
PublicKey public_key_field(const Json& body, const char* name);

Json to_json(const market::Account& a, const market::MarketState& m);
Json to_json(const market::SensorRecord& s);
Json to_json(const market::Stream& s);
Json to_json(const market::Subscription& s);
Json to_json(const market::EnvelopeRecord& e);
Json to_json(const ledger::Transaction& tx);
Json to_json(const TxLocation& loc);
Json to_json(const ledger::Block& b);
Json to_json(const tangle::TangleSite& s);

}  // namespace datchain::service
