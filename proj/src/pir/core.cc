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

#include "pir/core.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "pir/random.h"

namespace pir {

namespace {

// Wire encodings carry alphabets, message indexes and positions as 32-bit
// fields; parameters are capped accordingly up front.
constexpr uint64_t kMaxU32 = 0xffffffffULL;

BigInt pow_big(const BigInt& base, uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) {
      result *= b;
    }
    exp >>= 1;
    if (exp > 0) {
      b *= b;
    }
  }
  return result;
}

}  // namespace

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) {
    throw std::invalid_argument("Rational: zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) {
    throw std::invalid_argument("ceil_div: divisor must be positive");
  }
  return (a + b - 1) / b;
}

uint64_t to_u64(const BigInt& value, const char* what) {
  if (value < 0 || value > BigInt(std::numeric_limits<uint64_t>::max())) {
    throw std::overflow_error(std::string(what) +
                              ": value does not fit in 64 bits");
  }
  return value.convert_to<uint64_t>();
}

uint64_t binomial(uint32_t n, uint32_t k) {
  if (k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  BigInt result = 1;
  for (uint32_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return to_u64(result, "binomial");
}

void SchemeParams::validate() const {
  if (num_databases < 1) {
    throw std::invalid_argument("params: need at least one database");
  }
  if (num_messages < 1) {
    throw std::invalid_argument("params: need at least one message");
  }
  if (message_length < 1) {
    throw std::invalid_argument("params: message length must be positive");
  }
  if (message_alphabet < 2 || message_alphabet > kMaxU32) {
    throw std::invalid_argument("params: message alphabet must be in [2, 2^32-1]");
  }
  if (download_alphabet < 2 || download_alphabet > kMaxU32) {
    throw std::invalid_argument(
        "params: download alphabet must be in [2, 2^32-1]");
  }
  if (message_length > kMaxU32) {
    throw std::invalid_argument("params: message length must fit in 32 bits");
  }
}

MessageStore MessageStore::random(const SchemeParams& params, uint64_t seed) {
  params.validate();
  MessageStore store;
  store.alphabet = params.message_alphabet;
  store.messages.resize(params.num_messages);
  Rng rng(seed);
  for (auto& message : store.messages) {
    message.resize(params.message_length);
    for (auto& symbol : message) {
      symbol = rng.below(params.message_alphabet);
    }
  }
  return store;
}

void MessageStore::validate(const SchemeParams& params) const {
  if (alphabet != params.message_alphabet) {
    throw std::invalid_argument("store: alphabet does not match params");
  }
  if (messages.size() != params.num_messages) {
    throw std::invalid_argument("store: message count does not match params");
  }
  for (const auto& message : messages) {
    if (message.size() != params.message_length) {
      throw std::invalid_argument("store: message length does not match params");
    }
    for (uint64_t symbol : message) {
      if (symbol >= alphabet) {
        throw std::invalid_argument("store: symbol out of alphabet range");
      }
    }
  }
}

uint64_t MessageStore::symbol(uint32_t message_index, uint64_t position) const {
  if (message_index < 1 || message_index > messages.size()) {
    throw std::out_of_range("store: message index out of range");
  }
  const Message& message = messages[message_index - 1];
  if (position < 1 || position > message.size()) {
    throw std::out_of_range("store: position out of range");
  }
  return message[position - 1];
}

KSum::KSum(std::vector<VirtualSymbol> t) : terms(std::move(t)) {
  std::sort(terms.begin(), terms.end());
  for (size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].message_index == terms[i - 1].message_index) {
      throw std::invalid_argument("KSum: duplicate message index in sum");
    }
  }
}

std::vector<uint32_t> KSum::type() const {
  std::vector<uint32_t> t;
  t.reserve(terms.size());
  for (const auto& term : terms) {
    t.push_back(term.message_index);
  }
  return t;
}

bool KSum::contains_message(uint32_t message_index) const {
  for (const auto& term : terms) {
    if (term.message_index == message_index) {
      return true;
    }
  }
  return false;
}

KSum KSum::without_message(uint32_t message_index) const {
  KSum result;
  result.terms.reserve(terms.size() - 1);
  for (const auto& term : terms) {
    if (term.message_index != message_index) {
      result.terms.push_back(term);
    }
  }
  return result;
}

bool plan_order_less(const KSum& a, const KSum& b) {
  if (a.terms.size() != b.terms.size()) {
    return a.terms.size() < b.terms.size();
  }
  for (size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].message_index != b.terms[i].message_index) {
      return a.terms[i].message_index < b.terms[i].message_index;
    }
  }
  if (!a.terms.empty() && a.terms[0].position != b.terms[0].position) {
    return a.terms[0].position < b.terms[0].position;
  }
  return a.terms < b.terms;
}

uint64_t CountProfile::at(uint32_t db, uint32_t k) const {
  if (db < 1 || db > num_databases || k < 1 || k > num_messages) {
    throw std::out_of_range("count profile: index out of range");
  }
  return counts[db - 1][k - 1];
}

uint64_t CountProfile::symbols_per_database(uint32_t db) const {
  BigInt total = 0;
  for (uint32_t k = 1; k <= num_messages; ++k) {
    total += BigInt(at(db, k)) * binomial(num_messages - 1, k - 1);
  }
  return to_u64(total, "count profile");
}

uint64_t CountProfile::entries_per_database(uint32_t db) const {
  BigInt total = 0;
  for (uint32_t k = 1; k <= num_messages; ++k) {
    total += BigInt(at(db, k)) * binomial(num_messages, k);
  }
  return to_u64(total, "count profile");
}

Rational capacity(uint32_t num_databases, uint32_t num_messages) {
  if (num_databases < 1 || num_messages < 1) {
    throw std::invalid_argument("capacity: N and K must be positive");
  }
  const BigInt n(num_databases);
  BigInt geometric = 0;  // 1 + N + ... + N^(K-1)
  BigInt power = 1;
  for (uint32_t i = 0; i < num_messages; ++i) {
    geometric += power;
    power *= n;
  }
  return Rational(pow_big(n, num_messages - 1), geometric);
}

uint64_t optimal_download_cost(uint32_t num_databases, uint32_t num_messages,
                               uint64_t message_length) {
  if (message_length < 1) {
    throw std::invalid_argument("cost: message length must be positive");
  }
  const Rational c = capacity(num_databases, num_messages);
  return to_u64(ceil_div(BigInt(message_length) * c.den, c.num),
                "optimal download cost");
}

uint64_t shortest_capacity_length(uint32_t num_databases,
                                  uint32_t num_messages) {
  if (num_databases < 2 || num_messages < 1) {
    throw std::invalid_argument(
        "shortest capacity length: need N >= 2 and K >= 1");
  }
  return to_u64(pow_big(BigInt(num_databases), num_messages - 1),
                "shortest capacity length");
}

bool attains_capacity(uint32_t num_databases, uint32_t num_messages,
                      uint64_t message_length) {
  if (message_length < 1) {
    throw std::invalid_argument("attains: message length must be positive");
  }
  const Rational c = capacity(num_databases, num_messages);
  return BigInt(message_length) * c.den % c.num == 0;
}

CountProfile count_profile(uint32_t num_databases, uint32_t num_messages) {
  if (num_databases < 2) {
    throw std::invalid_argument("count profile: requires N >= 2");
  }
  if (num_messages < 1) {
    throw std::invalid_argument("count profile: requires K >= 1");
  }
  std::vector<std::vector<BigInt>> v(num_databases,
                                     std::vector<BigInt>(num_messages, 0));
  v[0][0] = 1;
  for (uint32_t k = 2; k <= num_messages; ++k) {
    BigInt total = 0;
    for (uint32_t db = 1; db <= num_databases; ++db) {
      total += v[db - 1][k - 2];
    }
    for (uint32_t db = 1; db <= num_databases; ++db) {
      v[db - 1][k - 1] = total - v[db - 1][k - 2];
    }
  }
  CountProfile profile;
  profile.num_databases = num_databases;
  profile.num_messages = num_messages;
  profile.counts.assign(num_databases, std::vector<uint64_t>(num_messages, 0));
  for (uint32_t db = 1; db <= num_databases; ++db) {
    for (uint32_t k = 1; k <= num_messages; ++k) {
      profile.counts[db - 1][k - 1] = to_u64(v[db - 1][k - 1], "count profile");
    }
  }
  return profile;
}

}  // namespace pir
