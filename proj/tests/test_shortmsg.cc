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

#include "pir/shortmsg.h"

#include <map>
#include <set>

#include "doctest.h"

using namespace pir;

namespace {

MessageStore store_of(uint64_t alphabet, std::vector<Message> messages) {
  MessageStore store;
  store.alphabet = alphabet;
  store.messages = std::move(messages);
  return store;
}

}  // namespace

TEST_CASE("queries flip exactly one desired coefficient per database") {
  SUBCASE("N=2 K=1 single bit") {
    const CoinVector coins = zero_coins(1, 1);
    const auto queries = short_queries(2, 1, 1, coins);
    CHECK(queries[0].bits == std::vector<uint8_t>{0});
    CHECK(queries[1].bits == std::vector<uint8_t>{1});
  }
  SUBCASE("N=3 K=2 theta=2, flip position moves with the database") {
    const CoinVector coins = zero_coins(2, 2);
    const auto queries = short_queries(3, 2, 2, coins);
    CHECK(queries[0].bits == std::vector<uint8_t>{0, 0, 0, 0});
    CHECK(queries[1].bits == std::vector<uint8_t>{0, 0, 1, 0});
    CHECK(queries[2].bits == std::vector<uint8_t>{0, 0, 0, 1});
  }
  SUBCASE("rejects a single database") {
    CHECK_THROWS_AS(short_queries(1, 1, 1, zero_coins(1, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("each database's query is a bijection of the coin space") {
  // Over all coin vectors, every query vector appears exactly once at every
  // database, for every desired index.
  const uint32_t n = 3;
  const uint32_t k = 2;
  const uint64_t space = 1ull << ((n - 1) * k);
  for (uint32_t theta = 1; theta <= k; ++theta) {
    std::vector<std::set<std::vector<uint8_t>>> seen(n);
    for (uint64_t index = 0; index < space; ++index) {
      const CoinVector coins = unrank_coins(k, n - 1, index);
      const auto queries = short_queries(n, k, theta, coins);
      for (uint32_t db = 0; db < n; ++db) {
        seen[db].insert(queries[db].bits);
      }
    }
    for (uint32_t db = 0; db < n; ++db) {
      CHECK(seen[db].size() == space);
    }
  }
}

TEST_CASE("answers are coefficient-weighted modular sums") {
  const MessageStore store = store_of(5, {{3}, {4}});
  SUBCASE("all-zero coefficients") {
    CHECK(short_answer(zero_coins(2, 1), store, 0, 5) == 0);
  }
  SUBCASE("single coefficient") {
    CoinVector coins = zero_coins(2, 1);
    coins.flip(1, 1);
    CHECK(short_answer(coins, store, 0, 5) == 3);
  }
  SUBCASE("wrap-around") {
    CoinVector coins = zero_coins(2, 1);
    coins.flip(1, 1);
    coins.flip(2, 1);
    CHECK(short_answer(coins, store, 0, 5) == 2);  // (3 + 4) mod 5
  }
}

TEST_CASE("decode inverts the flip, including the sign") {
  SUBCASE("zero coins pass answers through") {
    const CoinVector coins = zero_coins(1, 2);
    CHECK(short_decode({0, 5, 6}, coins, 1, 7) ==
          std::vector<uint64_t>{5, 6});
  }
  SUBCASE("coin set on the desired coordinate negates the difference") {
    CoinVector coins = zero_coins(1, 1);
    coins.flip(1, 1);
    // A_1 includes the symbol, A_2 dropped it: 5 - 0.
    CHECK(short_decode({5, 0}, coins, 1, 7) == std::vector<uint64_t>{5});
  }
  SUBCASE("random end-to-end trials across alphabets") {
    for (uint64_t alphabet : {2ull, 3ull, 256ull}) {
      Rng rng(alphabet * 31 + 1);
      for (int trial = 0; trial < 200; ++trial) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng.below(3));
        const uint32_t k = 1 + static_cast<uint32_t>(rng.below(3));
        const SchemeParams params{n, k, n - 1, alphabet, alphabet};
        const MessageStore store =
            MessageStore::random(params, rng.next_u64());
        const uint32_t theta = 1 + static_cast<uint32_t>(rng.below(k));
        const CoinVector coins = sample_coins(k, n - 1, rng);
        const auto queries = short_queries(n, k, theta, coins);
        std::vector<uint64_t> answers;
        for (const auto& query : queries) {
          answers.push_back(short_answer(query, store, 0, alphabet));
        }
        CHECK(short_decode(answers, coins, theta, alphabet) ==
              store.messages[theta - 1]);
      }
    }
  }
}
