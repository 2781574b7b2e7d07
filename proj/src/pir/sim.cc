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

#include "pir/sim.h"

#include <stdexcept>

#include "pir/alphabet.h"
#include "pir/composite.h"

namespace pir {

AnswerString answer_query(const WireQuery& query, const MessageStore& store) {
  if (query.alphabet != store.alphabet) {
    throw ProtocolError("answer: query alphabet does not match the replica");
  }
  AnswerString answer;
  answer.symbols.reserve(query.sums.size());
  for (const auto& sum : query.sums) {
    uint64_t acc = 0;
    for (const auto& term : sum.terms) {
      if (term.message_index < 1 || term.message_index > store.messages.size()) {
        throw ProtocolError("answer: message index out of range");
      }
      const Message& message = store.messages[term.message_index - 1];
      if (term.position < 1 || term.position > message.size()) {
        throw ProtocolError("answer: position out of range");
      }
      acc = (acc + message[term.position - 1]) % query.alphabet;
    }
    answer.symbols.push_back(acc);
  }
  return answer;
}

Transcript run_protocol(const SchemeParams& params, uint32_t theta,
                        const MessageStore& store, uint64_t seed) {
  params.validate();
  if (theta < 1 || theta > params.num_messages) {
    throw std::invalid_argument("run: desired index out of range");
  }
  Transcript transcript =
      params.matched() ? composite_run(params, theta, store, seed)
                       : mismatched_run(params, theta, store, seed);
  transcript.seed = seed;
  return transcript;
}

nlohmann::ordered_json params_to_json(const SchemeParams& params) {
  return nlohmann::ordered_json{
      {"databases", params.num_databases},
      {"messages", params.num_messages},
      {"length", params.message_length},
      {"message_alphabet", params.message_alphabet},
      {"download_alphabet", params.download_alphabet},
  };
}

SchemeParams params_from_json(const nlohmann::json& json) {
  SchemeParams params;
  params.num_databases = json.at("databases").get<uint32_t>();
  params.num_messages = json.at("messages").get<uint32_t>();
  params.message_length = json.at("length").get<uint64_t>();
  params.message_alphabet = json.at("message_alphabet").get<uint64_t>();
  params.download_alphabet = json.value("download_alphabet",
                                        params.message_alphabet);
  params.validate();
  return params;
}

nlohmann::ordered_json store_to_json(const MessageStore& store) {
  return nlohmann::ordered_json{{"alphabet", store.alphabet},
                                {"messages", store.messages}};
}

MessageStore store_from_json(const nlohmann::json& json) {
  MessageStore store;
  store.alphabet = json.at("alphabet").get<uint64_t>();
  store.messages = json.at("messages").get<std::vector<Message>>();
  return store;
}

nlohmann::ordered_json Transcript::to_json() const {
  nlohmann::ordered_json queries_json = nlohmann::ordered_json::array();
  for (const auto& query : queries) {
    nlohmann::ordered_json entry = query_to_json(query);
    entry["hex"] = to_hex(serialize_query(query));
    queries_json.push_back(std::move(entry));
  }
  nlohmann::ordered_json answers_json = nlohmann::ordered_json::array();
  for (const auto& answer : answers) {
    nlohmann::ordered_json entry = answer_to_json(answer);
    entry["hex"] = to_hex(serialize_answer(answer, params.download_alphabet));
    answers_json.push_back(std::move(entry));
  }

  nlohmann::ordered_json json{
      {"params", params_to_json(params)},
      {"theta", theta},
      {"transcoded_length", transcoded_length},
      {"queries", std::move(queries_json)},
      {"answers", std::move(answers_json)},
      {"per_db_symbols", per_db_symbols},
      {"total_download", total_download},
      {"decoded", decoded},
  };
  if (params.matched() || params.num_databases == 1) {
    const uint64_t optimal =
        optimal_download_cost(params.num_databases, params.num_messages,
                              params.matched() ? params.message_length
                                               : transcoded_length);
    json["optimal_download"] = optimal;
    json["optimality"] =
        total_download == optimal ? "optimal" : "suboptimal";
  } else {
    // Mismatched alphabets: the exact optimum is only known to lie in a
    // window; report the window rather than a point.
    const TranscodedLength bounds = mismatched_cost_bounds(params);
    json["download_window"] = {bounds.lower_bound_cost, bounds.achieved_cost};
    if (total_download != bounds.achieved_cost) {
      json["optimality"] = "suboptimal";
    } else {
      json["optimality"] = bounds.exactly_optimal ? "exactly_optimal"
                                                  : "within_window";
    }
  }
  if (seed.has_value()) {
    json["seed"] = *seed;
  }
  return json;
}

}  // namespace pir
