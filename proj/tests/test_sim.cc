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

#include "doctest.h"
#include "pir/composite.h"
#include "pir/qgen.h"
#include "pir/transport.h"

using namespace pir;

namespace {

MessageStore store_of(uint64_t alphabet, std::vector<Message> messages) {
  MessageStore store;
  store.alphabet = alphabet;
  store.messages = std::move(messages);
  return store;
}

}  // namespace

TEST_CASE("databases answer modulo sums") {
  const MessageStore store = store_of(5, {{4, 3}, {4, 1}});
  WireQuery query;
  query.alphabet = 5;
  SUBCASE("singleton") {
    query.sums = {WireSum({{1, 1}})};
    CHECK(answer_query(query, store).symbols == std::vector<uint64_t>{4});
  }
  SUBCASE("two-term wrap-around") {
    query.sums = {WireSum({{1, 2}, {2, 1}})};
    CHECK(answer_query(query, store).symbols ==
          std::vector<uint64_t>{2});  // (3 + 4) mod 5
  }
  SUBCASE("empty sum returns zero") {
    query.sums = {WireSum()};
    CHECK(answer_query(query, store).symbols == std::vector<uint64_t>{0});
  }
  SUBCASE("out-of-range references are protocol errors") {
    query.sums = {WireSum({{3, 1}})};
    CHECK_THROWS_AS(answer_query(query, store), ProtocolError);
    query.sums = {WireSum({{1, 3}})};
    CHECK_THROWS_AS(answer_query(query, store), ProtocolError);
  }
  SUBCASE("alphabet mismatch is a protocol error") {
    query.alphabet = 7;
    query.sums = {WireSum({{1, 1}})};
    CHECK_THROWS_AS(answer_query(query, store), ProtocolError);
  }
}

TEST_CASE("worked decode with identity permutations") {
  // W_1 = (7,9), W_2 = (1,2), M = 10, theta = 1: database 1 answers its two
  // singletons, database 2 answers (9 + 1) mod 10 = 0.
  const SchemeParams params{2, 2, 2, 10, 10};
  const MessageStore store = store_of(10, {{7, 9}, {1, 2}});
  CompositeRandomness randomness(1);
  randomness[0].gamma = identity_permutations(params);
  const Transcript t = composite_run(params, 1, store, randomness);
  CHECK(t.answers[0].symbols == std::vector<uint64_t>{7, 1});
  CHECK(t.answers[1].symbols == std::vector<uint64_t>{0});
  CHECK(t.decoded == Message{7, 9});
  CHECK(t.total_download == 3);
}

TEST_CASE("run protocol matches the published totals") {
  struct Case {
    SchemeParams params;
    uint64_t expected;
  };
  const Case cases[] = {
      {{2, 2, 2, 2, 2}, 3},
      {{3, 3, 9, 2, 2}, 13},
      {{1, 2, 4, 2, 2}, 8},
      {{2, 3, 4, 2, 2}, 7},
  };
  for (const auto& test : cases) {
    const MessageStore store = MessageStore::random(test.params, 1);
    for (uint32_t theta = 1; theta <= test.params.num_messages; ++theta) {
      const Transcript t = run_protocol(test.params, theta, store, 42);
      CHECK(t.total_download == test.expected);
      CHECK(t.decoded == store.messages[theta - 1]);
    }
  }
}

TEST_CASE("transcripts are deterministic in the seed") {
  const SchemeParams params{3, 2, 5, 4, 4};
  const MessageStore store = MessageStore::random(params, 12);
  const Transcript a = run_protocol(params, 2, store, 7);
  const Transcript b = run_protocol(params, 2, store, 7);
  CHECK(a.to_json() == b.to_json());
  const Transcript c = run_protocol(params, 2, store, 8);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("transcript json is self-describing") {
  const SchemeParams params{2, 2, 3, 9, 3};
  const MessageStore store = MessageStore::random(params, 3);
  const Transcript t = run_protocol(params, 1, store, 5);
  const auto json = t.to_json();
  CHECK(json["params"]["databases"] == 2);
  CHECK(json["params"]["message_alphabet"] == 9);
  CHECK(json["params"]["download_alphabet"] == 3);
  CHECK(json["theta"] == 1);
  CHECK(json["seed"] == 5);
  CHECK(json["transcoded_length"] == 6);
  CHECK(json["total_download"] == 9);
  CHECK(json["download_window"][0] == 9);
  CHECK(json["download_window"][1] == 9);
  CHECK(json["optimality"] == "exactly_optimal");
  CHECK(json["queries"].size() == 2);
  CHECK(json["queries"][0].contains("hex"));
  // Params and store survive the JSON round trip.
  const SchemeParams back = params_from_json(json["params"]);
  CHECK(back.message_alphabet == 9);
  const MessageStore store_back = store_from_json(store_to_json(store));
  CHECK(store_back.messages == store.messages);
}

TEST_CASE("answer lengths depend only on the database") {
  const SchemeParams params{3, 3, 16, 2, 2};
  const MessageStore store = MessageStore::random(params, 9);
  std::vector<uint64_t> reference;
  for (uint32_t theta = 1; theta <= 3; ++theta) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
      const Transcript t = run_protocol(params, theta, store, seed);
      if (reference.empty()) {
        reference = t.per_db_symbols;
      } else {
        CHECK(t.per_db_symbols == reference);
      }
    }
  }
}

TEST_CASE("loopback transport carries the same bytes") {
  const SchemeParams params{2, 2, 3, 5, 5};
  const MessageStore store = MessageStore::random(params, 31);
  const Decomposition d = scheme_segments(params);
  const CompositeRandomness randomness = sample_randomness(params, d, 17);
  const ComposedQueries composed = compose_queries(params, 1, randomness);

  // Each database actor runs behind its own socket with its own replica.
  LoopbackDatabase db1(store);
  LoopbackDatabase db2(store);
  std::vector<AnswerString> answers = {
      query_over_socket(db1.port(), composed.per_database[0]),
      query_over_socket(db2.port(), composed.per_database[1]),
  };
  CHECK(answers[0] == answer_query(composed.per_database[0], store));
  CHECK(answers[1] == answer_query(composed.per_database[1], store));
  CHECK(decode_composed(composed, answers) == store.messages[0]);
}
