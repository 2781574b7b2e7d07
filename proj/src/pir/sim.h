// Copyright 2026 the pirsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "pir/core.h"
#include "pir/wire.h"

namespace pir {

// Full record of one protocol run.
struct Transcript {
  SchemeParams params;
  uint32_t theta = 0;
  std::optional<uint64_t> seed;
  std::vector<WireQuery> queries;    // one per database
  std::vector<AnswerString> answers; // one per database
  std::vector<uint64_t> per_db_symbols;
  uint64_t total_download = 0;
  uint64_t transcoded_length = 0;    // equals L when alphabets match
  Message decoded;                   // L symbols over the message alphabet

  nlohmann::ordered_json to_json() const;
};

// Database side: evaluates every requested sum modulo the query's alphabet
// against the local replica. Pure in (query, store); never sees theta.
AnswerString answer_query(const WireQuery& query, const MessageStore& store);

// One full protocol run: builds queries (matched alphabets run the
// composite scheme, mismatched ones transcode first), answers each database
// against its own replica, decodes, and accounts the download.
// Deterministic given the seed.
Transcript run_protocol(const SchemeParams& params, uint32_t theta,
                        const MessageStore& store, uint64_t seed);

nlohmann::ordered_json params_to_json(const SchemeParams& params);
SchemeParams params_from_json(const nlohmann::json& json);
nlohmann::ordered_json store_to_json(const MessageStore& store);
MessageStore store_from_json(const nlohmann::json& json);

}  // namespace pir
