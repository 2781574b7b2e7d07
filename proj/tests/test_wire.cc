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

#include "pir/wire.h"

#include "doctest.h"
#include "pir/random.h"

using namespace pir;

TEST_CASE("query bytes are bit-exact") {
  WireQuery query;
  query.kind = SchemeKind::kCapacity;
  query.alphabet = 2;
  query.sums = {WireSum({{1, 1}}), WireSum({{1, 2}, {2, 1}})};
  const auto bytes = serialize_query(query);
  // "PIRQ", version 1, kind 0, alphabet 2, two entries; indexes 0-based.
  CHECK(to_hex(bytes) ==
        "50495251"  // magic
        "01"        // version
        "00"        // kind: capacity
        "00000002"  // alphabet
        "00000002"  // entry count
        "01" "00000000" "00000000"
        "02" "00000000" "00000001" "00000001" "00000000");
  CHECK(parse_query(bytes) == query);
}

TEST_CASE("answer packing uses minimal whole bytes") {
  CHECK(symbol_width(2) == 1);
  CHECK(symbol_width(256) == 1);
  CHECK(symbol_width(257) == 2);
  CHECK(symbol_width(65536) == 2);
  CHECK(symbol_width(65537) == 3);

  AnswerString answer;
  answer.symbols = {0, 255, 7};
  CHECK(to_hex(serialize_answer(answer, 256)) == "0000000300ff07");
  CHECK(to_hex(serialize_answer(answer, 300)) == "000000030000" "00ff" "0007");
  CHECK(parse_answer(serialize_answer(answer, 300), 300) == answer);
}

TEST_CASE("round trips over random queries and answers") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    WireQuery query;
    query.kind = static_cast<SchemeKind>(rng.below(4));
    query.alphabet = 2 + rng.below(1000);
    const uint64_t entries = rng.below(6);
    for (uint64_t e = 0; e < entries; ++e) {
      std::vector<VirtualSymbol> terms;
      const uint64_t count = rng.below(4);
      for (uint64_t t = 0; t < count; ++t) {
        terms.push_back(VirtualSymbol{
            static_cast<uint32_t>(rng.below(5)) + 1, rng.below(30) + 1});
      }
      std::sort(terms.begin(), terms.end());
      terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
      query.sums.push_back(WireSum(std::move(terms)));
    }
    CHECK(parse_query(serialize_query(query)) == query);

    AnswerString answer;
    const uint64_t symbols = rng.below(8);
    for (uint64_t s = 0; s < symbols; ++s) {
      answer.symbols.push_back(rng.below(query.alphabet));
    }
    CHECK(parse_answer(serialize_answer(answer, query.alphabet),
                       query.alphabet) == answer);
  }
}

TEST_CASE("malformed bytes are rejected") {
  WireQuery query;
  query.kind = SchemeKind::kShort;
  query.alphabet = 3;
  query.sums = {WireSum({{1, 1}, {1, 2}})};
  auto bytes = serialize_query(query);

  SUBCASE("bad magic") {
    bytes[0] = 'X';
    CHECK_THROWS_AS(parse_query(bytes), ProtocolError);
  }
  SUBCASE("bad version") {
    bytes[4] = 9;
    CHECK_THROWS_AS(parse_query(bytes), ProtocolError);
  }
  SUBCASE("truncated") {
    bytes.pop_back();
    CHECK_THROWS_AS(parse_query(bytes), ProtocolError);
  }
  SUBCASE("trailing bytes") {
    bytes.push_back(0);
    CHECK_THROWS_AS(parse_query(bytes), ProtocolError);
  }
  SUBCASE("terms out of order") {
    // Swap the two 8-byte terms behind the term-count byte.
    const size_t base = 4 + 1 + 1 + 4 + 4 + 1;
    for (size_t i = 0; i < 8; ++i) {
      std::swap(bytes[base + i], bytes[base + 8 + i]);
    }
    CHECK_THROWS_AS(parse_query(bytes), ProtocolError);
  }
  SUBCASE("answer symbol out of alphabet") {
    AnswerString answer;
    answer.symbols = {5};
    CHECK_THROWS_AS(serialize_answer(answer, 5), ProtocolError);
    const auto ok = serialize_answer(answer, 6);
    CHECK_THROWS_AS(parse_answer(ok, 5), ProtocolError);
  }
  SUBCASE("duplicate term") {
    CHECK_THROWS_AS(WireSum({{1, 1}, {1, 1}}), ProtocolError);
  }
}
