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
#include "pir/qgen.h"
#include "pir/shortmsg.h"
#include "pir/sim.h"
#include "pir/wire.h"

// Concatenation of independent per-segment schemes: greedily as many
// capacity-scheme groups of N^(K-1) symbols as fit, then short-scheme groups
// of N-1 symbols, then one residual short-scheme instance on a database
// prefix. Per-segment queries are generated independently, so the joint
// query distribution factorizes and stays independent of theta.

namespace pir {

struct SegmentSpec {
  SchemeKind kind = SchemeKind::kCapacity;
  uint64_t offset = 0;          // 0-based start within each message
  uint64_t length = 0;          // symbols covered per message
  uint32_t databases_used = 0;  // prefix [1..databases_used]
};

struct Decomposition {
  uint64_t capacity_groups = 0;  // G1, segments of N^(K-1) symbols
  uint64_t short_groups = 0;     // G2, segments of N-1 symbols
  uint64_t residual = 0;         // L2 in [0, N-2]
  std::vector<SegmentSpec> segments;
};

// Greedy decomposition of L; requires N >= 2.
Decomposition decompose(const SchemeParams& params);

// Decomposition extended to N = 1 (single trivial full-download segment).
Decomposition scheme_segments(const SchemeParams& params);

// Total download of the decomposition in exact arithmetic:
// G1 * N^(K-1)/C + G2 * N (+ L2 + 1 when a residual exists). Always equal
// to optimal_download_cost; the acceptance suite checks the two routes
// against each other.
uint64_t composite_cost(const SchemeParams& params);

// Audit hook: deliberately broken randomness, used as a negative control.
enum class NegativeControl : uint8_t {
  kNone = 0,
  kIdentityPermutations = 1,  // capacity segments skip the private mapping
  kZeroCoins = 2,             // short segments use all-zero coefficients
};

// Per-segment randomness; which member applies follows the segment kind.
struct SegmentRandomness {
  PermutationMap gamma;
  CoinVector coins;
};

using CompositeRandomness = std::vector<SegmentRandomness>;

// Independent per-segment streams derived from one master seed
// (stream index = segment index).
CompositeRandomness sample_randomness(const SchemeParams& params,
                                      const Decomposition& decomposition,
                                      uint64_t seed,
                                      NegativeControl control =
                                          NegativeControl::kNone);

// Size of the joint randomness space (product over segments).
BigInt randomness_space_size(const SchemeParams& params,
                             const Decomposition& decomposition,
                             NegativeControl control = NegativeControl::kNone);

// Bijection from [0, randomness_space_size) onto randomness tuples.
CompositeRandomness unrank_randomness(const SchemeParams& params,
                                      const Decomposition& decomposition,
                                      uint64_t index,
                                      NegativeControl control =
                                          NegativeControl::kNone);

// Everything the user remembers about the queries it sent.
struct SegmentQueries {
  SegmentSpec spec;
  SegmentRandomness randomness;
  QueryPlan plan;  // capacity segments only
  // Wire entries per database for this segment, already offset into the
  // message, in transmitted order.
  std::vector<std::vector<WireSum>> sums;
  // Capacity segments: transmitted index of each plan entry.
  std::vector<std::vector<size_t>> entry_order;
};

struct ComposedQueries {
  SchemeParams params;
  uint32_t theta = 0;
  Decomposition decomposition;
  std::vector<SegmentQueries> segments;
  std::vector<WireQuery> per_database;
};

// Builds the complete wire queries for one run. Handles N = 1 via the
// trivial segment. The download alphabet must equal the message alphabet.
ComposedQueries compose_queries(const SchemeParams& params, uint32_t theta,
                                const CompositeRandomness& randomness);

// Per-database answer sizes implied by the decomposition alone.
std::vector<uint64_t> expected_answer_sizes(const SchemeParams& params,
                                            const Decomposition& decomposition);

// Recovers the desired message from the answers: capacity blocks peel side
// information off desired sums, short segments subtract paired answers,
// trivial segments read symbols directly.
Message decode_composed(const ComposedQueries& composed,
                        const std::vector<AnswerString>& answers);

// Full matched-alphabet run against a store, with explicit randomness.
Transcript composite_run(const SchemeParams& params, uint32_t theta,
                         const MessageStore& store,
                         const CompositeRandomness& randomness);

// Convenience: randomness sampled from the seed.
Transcript composite_run(const SchemeParams& params, uint32_t theta,
                         const MessageStore& store, uint64_t seed);

}  // namespace pir
