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

#include <stdexcept>

namespace pir {

namespace {

size_t bit_index(const CoinVector& coins, uint32_t message_index,
                 uint64_t position) {
  if (message_index < 1 || message_index > coins.num_messages ||
      position < 1 || position > coins.segment_length) {
    throw std::out_of_range("coins: index out of range");
  }
  return static_cast<size_t>((message_index - 1) * coins.segment_length +
                             (position - 1));
}

}  // namespace

uint8_t CoinVector::at(uint32_t message_index, uint64_t position) const {
  return bits[bit_index(*this, message_index, position)];
}

void CoinVector::flip(uint32_t message_index, uint64_t position) {
  bits[bit_index(*this, message_index, position)] ^= 1;
}

CoinVector sample_coins(uint32_t num_messages, uint64_t segment_length,
                        Rng& rng) {
  CoinVector coins;
  coins.num_messages = num_messages;
  coins.segment_length = segment_length;
  coins.bits.resize(static_cast<size_t>(num_messages) * segment_length);
  for (auto& bit : coins.bits) {
    bit = rng.bit();
  }
  return coins;
}

CoinVector zero_coins(uint32_t num_messages, uint64_t segment_length) {
  CoinVector coins;
  coins.num_messages = num_messages;
  coins.segment_length = segment_length;
  coins.bits.assign(static_cast<size_t>(num_messages) * segment_length, 0);
  return coins;
}

CoinVector unrank_coins(uint32_t num_messages, uint64_t segment_length,
                        uint64_t index) {
  CoinVector coins = zero_coins(num_messages, segment_length);
  for (auto& bit : coins.bits) {
    bit = static_cast<uint8_t>(index & 1);
    index >>= 1;
  }
  if (index != 0) {
    throw std::out_of_range("coins: rank out of range");
  }
  return coins;
}

std::vector<CoinVector> short_queries(uint32_t num_databases,
                                      uint32_t num_messages, uint32_t theta,
                                      const CoinVector& coins) {
  if (num_databases < 2) {
    throw std::invalid_argument("short scheme: requires N >= 2");
  }
  if (theta < 1 || theta > num_messages) {
    throw std::invalid_argument("short scheme: desired index out of range");
  }
  if (coins.num_messages != num_messages ||
      coins.segment_length != num_databases - 1) {
    throw std::invalid_argument("short scheme: coin vector shape mismatch");
  }
  std::vector<CoinVector> queries(num_databases, coins);
  for (uint32_t db = 2; db <= num_databases; ++db) {
    queries[db - 1].flip(theta, db - 1);
  }
  return queries;
}

uint64_t short_answer(const CoinVector& query, const MessageStore& store,
                      uint64_t offset, uint64_t alphabet) {
  uint64_t sum = 0;
  for (uint32_t k = 1; k <= query.num_messages; ++k) {
    for (uint64_t i = 1; i <= query.segment_length; ++i) {
      if (query.at(k, i)) {
        sum = (sum + store.symbol(k, offset + i)) % alphabet;
      }
    }
  }
  return sum;
}

std::vector<uint64_t> short_decode(const std::vector<uint64_t>& answers,
                                   const CoinVector& coins, uint32_t theta,
                                   uint64_t alphabet) {
  if (answers.size() != coins.segment_length + 1) {
    throw std::invalid_argument("short scheme: answer count mismatch");
  }
  std::vector<uint64_t> segment(coins.segment_length);
  for (uint64_t i = 1; i <= coins.segment_length; ++i) {
    uint64_t diff = (answers[i] % alphabet + alphabet - answers[0] % alphabet) %
                    alphabet;
    if (coins.at(theta, i)) {
      diff = (alphabet - diff) % alphabet;
    }
    segment[i - 1] = diff;
  }
  return segment;
}

}  // namespace pir
