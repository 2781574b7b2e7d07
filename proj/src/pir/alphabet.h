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

#include "pir/core.h"
#include "pir/sim.h"

// Mismatched download alphabets: messages in base M are losslessly recoded
// into the minimal number of base-M' digits, the matched-alphabet protocol
// runs over the recoded store, and the result is converted back. Every
// logarithmic ceiling here is an exact big-integer power comparison; the
// values involved sit exactly on integer boundaries whenever M^L is a
// perfect power of M', which floating point gets wrong.

namespace pir {

// Minimal x with M'^x >= M^L.
uint64_t transcoded_length(uint64_t message_length, uint64_t message_alphabet,
                           uint64_t download_alphabet);

// Fixed-width base conversion, big-endian digits, zero-padded at the most
// significant side. Injective on [0, M^L).
Message transcode(const Message& message, uint64_t message_alphabet,
                  uint64_t download_alphabet);

// Inverse of transcode; rejects codewords whose value is >= M^L.
Message transcode_back(const Message& coded, uint64_t message_length,
                       uint64_t message_alphabet, uint64_t download_alphabet);

// All messages transcoded; the result stores base-M' strings of length L'.
MessageStore transcode_store(const MessageStore& store,
                             uint64_t message_length,
                             uint64_t message_alphabet,
                             uint64_t download_alphabet);

// Download-cost window for a mismatched instance. The converse gives
// lower_bound_cost = ceil(L log_M'(M) / C); recoding achieves
// achieved_cost = ceil(L'/C); the two never differ by more than 2.
struct TranscodedLength {
  uint64_t lprime = 0;
  uint64_t lower_bound_cost = 0;
  uint64_t achieved_cost = 0;
  bool exactly_optimal = false;  // window collapsed to a point
};

// Requires N >= 2 (the window argument needs 1/C <= 2).
TranscodedLength mismatched_cost_bounds(const SchemeParams& params);

// Full protocol run with transcoding on both ends. Downloads exactly
// ceil(L'/C) base-M' symbols for N >= 2, and K*L' for N = 1.
Transcript mismatched_run(const SchemeParams& params, uint32_t theta,
                          const MessageStore& store, uint64_t seed);

}  // namespace pir
