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

#include "pir/composite.h"

#include <set>

#include "doctest.h"

using namespace pir;

TEST_CASE("greedy decomposition") {
  SUBCASE("N=3 K=3 L=16") {
    const Decomposition d = decompose({3, 3, 16, 2, 2});
    CHECK(d.capacity_groups == 1);
    CHECK(d.short_groups == 3);
    CHECK(d.residual == 1);
    REQUIRE(d.segments.size() == 5);
    CHECK(d.segments[0].kind == SchemeKind::kCapacity);
    CHECK(d.segments[0].length == 9);
    CHECK(d.segments[0].databases_used == 3);
    for (int i = 1; i <= 3; ++i) {
      CHECK(d.segments[i].kind == SchemeKind::kShort);
      CHECK(d.segments[i].length == 2);
      CHECK(d.segments[i].databases_used == 3);
    }
    CHECK(d.segments[4].kind == SchemeKind::kShort);
    CHECK(d.segments[4].length == 1);
    CHECK(d.segments[4].databases_used == 2);
    // Contiguous position coverage.
    uint64_t offset = 0;
    for (const auto& segment : d.segments) {
      CHECK(segment.offset == offset);
      offset += segment.length;
    }
    CHECK(offset == 16);
  }
  SUBCASE("N=2 K=2 L=3") {
    const Decomposition d = decompose({2, 2, 3, 2, 2});
    CHECK(d.capacity_groups == 1);
    CHECK(d.short_groups == 1);
    CHECK(d.residual == 0);
  }
  SUBCASE("N=2 K=2 L=2 is one capacity group") {
    const Decomposition d = decompose({2, 2, 2, 2, 2});
    CHECK(d.capacity_groups == 1);
    CHECK(d.short_groups == 0);
    CHECK(d.residual == 0);
    CHECK(d.segments.size() == 1);
  }
  SUBCASE("rejects N=1") {
    CHECK_THROWS_AS(decompose({1, 2, 3, 2, 2}), std::invalid_argument);
  }
  SUBCASE("invariants on a grid") {
    for (uint32_t n = 2; n <= 5; ++n) {
      for (uint32_t k = 1; k <= 4; ++k) {
        for (uint64_t l = 1; l <= 60; ++l) {
          const Decomposition d = decompose({n, k, l, 2, 2});
          const uint64_t group = shortest_capacity_length(n, k);
          CHECK(d.capacity_groups == l / group);
          CHECK(d.capacity_groups * group + d.short_groups * (n - 1) +
                    d.residual ==
                l);
          CHECK(d.residual <= n - 2);
          if (d.residual >= 1) {
            CHECK(d.segments.back().databases_used == d.residual + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("composite cost equals the closed form") {
  CHECK(composite_cost({3, 3, 16, 2, 2}) == 24);
  CHECK(composite_cost({2, 2, 3, 2, 2}) == 5);
  for (uint32_t n = 2; n <= 5; ++n) {
    for (uint32_t k = 1; k <= 4; ++k) {
      for (uint64_t l = 1; l <= 200; ++l) {
        CHECK(composite_cost({n, k, l, 2, 2}) ==
              optimal_download_cost(n, k, l));
      }
    }
  }
}

TEST_CASE("randomness space sizes multiply over segments") {
  const SchemeParams params{2, 2, 3, 2, 2};
  const Decomposition d = decompose(params);
  // One capacity group of 2 symbols ((2!)^2 maps) and one short group of 1
  // symbol (2^2 coin vectors).
  CHECK(randomness_space_size(params, d) == 16);
  CHECK(randomness_space_size(params, d,
                              NegativeControl::kIdentityPermutations) == 4);
  CHECK(randomness_space_size(params, d, NegativeControl::kZeroCoins) == 4);

  std::set<std::vector<uint8_t>> coin_values;
  std::set<std::vector<std::vector<uint64_t>>> gamma_values;
  for (uint64_t index = 0; index < 16; ++index) {
    const CompositeRandomness r = unrank_randomness(params, d, index);
    REQUIRE(r.size() == 2);
    gamma_values.insert(r[0].gamma.gamma);
    coin_values.insert(r[1].coins.bits);
  }
  CHECK(gamma_values.size() == 4);
  CHECK(coin_values.size() == 4);
  CHECK_THROWS_AS(unrank_randomness(params, d, 16), std::out_of_range);
}

TEST_CASE("composite run decodes and accounts the download") {
  SUBCASE("single capacity segment") {
    const SchemeParams params{2, 2, 2, 2, 2};
    const MessageStore store = MessageStore::random(params, 3);
    const Transcript t = composite_run(params, 1, store, uint64_t{7});
    CHECK(t.total_download == 3);
    CHECK(t.queries[0].kind == SchemeKind::kCapacity);
    CHECK(t.decoded == store.messages[0]);
  }
  SUBCASE("paper decomposition N=3 K=3 L=16") {
    const SchemeParams params{3, 3, 16, 7, 7};
    const MessageStore store = MessageStore::random(params, 4);
    for (uint32_t theta = 1; theta <= 3; ++theta) {
      const Transcript t = composite_run(params, theta, store, uint64_t{9});
      CHECK(t.total_download == 24);
      CHECK(t.queries[0].kind == SchemeKind::kComposite);
      CHECK(t.decoded == store.messages[theta - 1]);
    }
  }
  SUBCASE("trivial full download at N=1") {
    const SchemeParams params{1, 2, 4, 2, 2};
    const MessageStore store = MessageStore::random(params, 5);
    for (uint32_t theta = 1; theta <= 2; ++theta) {
      const Transcript t = composite_run(params, theta, store, uint64_t{1});
      CHECK(t.total_download == 8);
      CHECK(t.queries[0].kind == SchemeKind::kTrivial);
      CHECK(t.decoded == store.messages[theta - 1]);
      // The trivial query never depends on theta.
      CHECK(serialize_query(t.queries[0]) ==
            serialize_query(composite_run(params, 3 - theta, store,
                                          uint64_t{1})
                                .queries[0]));
    }
  }
  SUBCASE("segment boundaries do not depend on theta") {
    const SchemeParams params{3, 2, 7, 2, 2};
    const Decomposition d = scheme_segments(params);
    const CompositeRandomness randomness = sample_randomness(params, d, 21);
    std::vector<std::vector<size_t>> sizes;
    for (uint32_t theta = 1; theta <= 2; ++theta) {
      const ComposedQueries composed =
          compose_queries(params, theta, randomness);
      std::vector<size_t> per_segment;
      for (const auto& sq : composed.segments) {
        for (const auto& sums : sq.sums) {
          per_segment.push_back(sums.size());
        }
      }
      sizes.push_back(std::move(per_segment));
    }
    CHECK(sizes[0] == sizes[1]);
  }
}

TEST_CASE("expected answer sizes match reality") {
  for (uint32_t n = 2; n <= 4; ++n) {
    for (uint32_t k = 1; k <= 3; ++k) {
      const uint64_t l = shortest_capacity_length(n, k) + n;  // mixed segments
      const SchemeParams params{n, k, l, 3, 3};
      const MessageStore store = MessageStore::random(params, 8);
      const Transcript t = composite_run(params, 1, store, uint64_t{15});
      const std::vector<uint64_t> expected =
          expected_answer_sizes(params, scheme_segments(params));
      CHECK(t.per_db_symbols == expected);
      CHECK(t.total_download == optimal_download_cost(n, k, l));
    }
  }
}

TEST_CASE("decode detects tampered side information") {
  const SchemeParams params{2, 2, 2, 5, 5};
  const MessageStore store = MessageStore::random(params, 2);
  const Decomposition d = scheme_segments(params);
  const CompositeRandomness randomness = sample_randomness(params, d, 3);
  const ComposedQueries composed = compose_queries(params, 1, randomness);
  std::vector<AnswerString> answers;
  for (uint32_t db = 0; db < 2; ++db) {
    answers.push_back(answer_query(composed.per_database[db], store));
  }
  // Chop one answer short: the decoder must notice.
  answers[1].symbols.clear();
  CHECK_THROWS_AS(decode_composed(composed, answers), ProtocolError);
}
