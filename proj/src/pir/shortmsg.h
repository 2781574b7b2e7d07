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
#include <vector>

#include "pir/core.h"
#include "pir/random.h"

// Short-message scheme: message length L = N-1, download cost N. Database 1
// is asked for a random {0,1}-combination of all stored symbols; database
// n+1 for the same combination with the desired message's n-th coefficient
// flipped. Subtracting the two answers isolates one desired symbol.

namespace pir {

// Random coefficient vector h_k(i), one bit per (message k, position i),
// i in [1..segment_length].
struct CoinVector {
  uint32_t num_messages = 0;
  uint64_t segment_length = 0;  // N-1 for a full-width instance
  std::vector<uint8_t> bits;    // [(k-1)*segment_length + (i-1)]

  uint8_t at(uint32_t message_index, uint64_t position) const;
  void flip(uint32_t message_index, uint64_t position);
};

CoinVector sample_coins(uint32_t num_messages, uint64_t segment_length,
                        Rng& rng);
CoinVector zero_coins(uint32_t num_messages, uint64_t segment_length);

// Bijection from [0, 2^(K*segment_length)) onto coin vectors.
CoinVector unrank_coins(uint32_t num_messages, uint64_t segment_length,
                        uint64_t index);

// Queries for num_databases databases: query 1 is the coin vector itself,
// query n+1 flips the bit at (theta, n). Requires num_databases >= 2 and
// coins sized for num_databases - 1 positions.
std::vector<CoinVector> short_queries(uint32_t num_databases,
                                      uint32_t num_messages, uint32_t theta,
                                      const CoinVector& coins);

// Coefficient-weighted modulo-`alphabet` sum over the store segment starting
// at `offset` (0-based; position i reads store symbol offset + i).
uint64_t short_answer(const CoinVector& query, const MessageStore& store,
                      uint64_t offset, uint64_t alphabet);

// Recovers the desired segment from the answers of all num_databases
// databases. Flipping a 1-coefficient to 0 subtracts the symbol instead of
// adding it, so the difference is negated whenever the coin was 1.
std::vector<uint64_t> short_decode(const std::vector<uint64_t>& answers,
                                   const CoinVector& coins, uint32_t theta,
                                   uint64_t alphabet);

}  // namespace pir
