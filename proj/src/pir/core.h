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

#include <compare>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pir {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, kept in lowest terms with a positive denominator. Cost
// formulas take ceilings of values that sit exactly on integer boundaries;
// nothing here passes through floating point.
struct Rational {
  BigInt num;
  BigInt den;

  Rational() : num(0), den(1) {}
  Rational(BigInt n, BigInt d);

  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& other) const {
    return num == other.num && den == other.den;
  }
  std::string str() const;
};

// Ceiling of a/b for positive big integers.
BigInt ceil_div(const BigInt& a, const BigInt& b);

// Converts to uint64_t, throwing std::overflow_error when out of range.
uint64_t to_u64(const BigInt& value, const char* what);

// Binomial coefficient C(n, k) as an exact value.
uint64_t binomial(uint32_t n, uint32_t k);

// Public parameters of one PIR instance.
//   num_databases      N  - replicated, non-communicating databases
//   num_messages       K  - messages stored at every database
//   message_length     L  - symbols per message
//   message_alphabet   M  - symbols are values in [0, M-1]
//   download_alphabet  M' - alphabet of the downloaded symbols
struct SchemeParams {
  uint32_t num_databases = 0;
  uint32_t num_messages = 0;
  uint64_t message_length = 0;
  uint64_t message_alphabet = 0;
  uint64_t download_alphabet = 0;

  bool matched() const { return message_alphabet == download_alphabet; }

  // Throws std::invalid_argument on any violated range.
  void validate() const;
};

// One message: message_length symbols, each in [0, alphabet-1].
using Message = std::vector<uint64_t>;

// The K messages replicated at every database.
struct MessageStore {
  uint64_t alphabet = 0;
  std::vector<Message> messages;

  static MessageStore random(const SchemeParams& params, uint64_t seed);

  // Checks shape and symbol ranges against params (alphabet must equal M).
  void validate(const SchemeParams& params) const;

  // 1-based message index and position.
  uint64_t symbol(uint32_t message_index, uint64_t position) const;
};

// A single virtual symbol U_k(j): 1-based message index k and position j.
struct VirtualSymbol {
  uint32_t message_index = 0;
  uint64_t position = 0;

  auto operator<=>(const VirtualSymbol&) const = default;
};

// A sum of distinct virtual symbols, no two drawn from the same message.
// Terms are kept sorted by message index; the sorted sequence of message
// indexes is the sum's type.
struct KSum {
  std::vector<VirtualSymbol> terms;

  KSum() = default;
  explicit KSum(std::vector<VirtualSymbol> t);

  uint32_t order() const { return static_cast<uint32_t>(terms.size()); }
  std::vector<uint32_t> type() const;
  bool contains_message(uint32_t message_index) const;

  // Returns the sum with the given message's term removed.
  KSum without_message(uint32_t message_index) const;

  auto operator<=>(const KSum&) const = default;
};

// Access order for sums within a query set: ascending order (term count),
// then type, then position of the term with the smallest message index.
bool plan_order_less(const KSum& a, const KSum& b);

// v(DB, k): how many k-sums of each type database DB's query set holds.
struct CountProfile {
  uint32_t num_databases = 0;
  uint32_t num_messages = 0;
  std::vector<std::vector<uint64_t>> counts;  // [db-1][k-1]

  uint64_t at(uint32_t db, uint32_t k) const;

  // Distinct positions of each message appearing at DB:
  // sum_k v(DB,k) * C(K-1, k-1).
  uint64_t symbols_per_database(uint32_t db) const;

  // Query-set cardinality at DB: sum_k v(DB,k) * C(K,k).
  uint64_t entries_per_database(uint32_t db) const;
};

// C(N, K) = (1 + 1/N + ... + 1/N^(K-1))^-1, exact.
Rational capacity(uint32_t num_databases, uint32_t num_messages);

// ceil(L / C) in exact integer arithmetic; K*L when N = 1.
uint64_t optimal_download_cost(uint32_t num_databases, uint32_t num_messages,
                               uint64_t message_length);

// N^(K-1), the least L whose optimal rate equals the capacity. N >= 2.
uint64_t shortest_capacity_length(uint32_t num_databases,
                                  uint32_t num_messages);

// True iff L/C is an integer, i.e. length L attains the capacity exactly.
bool attains_capacity(uint32_t num_databases, uint32_t num_messages,
                      uint64_t message_length);

// The unique profile with v(1,1)=1, v(DB,1)=0 for DB>=2 and
// v(DB,k) = sum over DB' != DB of v(DB',k-1). Requires N >= 2.
CountProfile count_profile(uint32_t num_databases, uint32_t num_messages);

}  // namespace pir
