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

namespace pir {

// Hands out fresh virtual-symbol positions, one counter per message. A
// cursor belongs to a single plan-generation run; the run never asks for
// more than `limit` symbols of any message.
class FreshSymbolCursor {
 public:
  FreshSymbolCursor(uint32_t num_messages, uint64_t limit);

  VirtualSymbol take(uint32_t message_index);

 private:
  uint64_t limit_;
  std::vector<uint64_t> next_;  // per message, 1-based position to hand out
};

enum class Partition : uint8_t {
  kInterference,  // sums without the desired message
  kDesired,       // sums containing the desired message
};

// One database's query set, with block / partition bookkeeping attached.
struct QuerySet {
  struct Entry {
    KSum sum;
    uint32_t block = 0;  // 1-based; a block-k entry is a k-sum
    Partition partition = Partition::kInterference;
  };
  std::vector<Entry> entries;

  std::vector<KSum> block_partition(uint32_t block, Partition partition) const;
};

// The deterministic query plan for one desired index, before the private
// position permutations are applied.
struct QueryPlan {
  SchemeParams params;
  uint32_t theta = 0;
  std::vector<QuerySet> per_database;
};

// K independent permutations of [1..N^(K-1)]; gamma[k-1][j-1] = gamma_k(j).
struct PermutationMap {
  std::vector<std::vector<uint64_t>> gamma;

  uint64_t apply(uint32_t message_index, uint64_t position) const;
};

// One database's realized query: entries over real message positions, in
// canonical transmitted order (ascending term count, then term content).
struct RealizedQuery {
  std::vector<KSum> entries;
};

struct RealizedQueries {
  std::vector<RealizedQuery> per_database;
  // For each database, entry_order[db][i] is the transmitted index of plan
  // entry i; used by the decoder to align answers with plan entries.
  std::vector<std::vector<size_t>> entry_order;
};

// Adds the sums needed to give every type of every order the same count as
// the largest count of that order in `q`. Fresh symbols come from `cursor`.
std::vector<KSum> message_symmetrize(const std::vector<KSum>& q,
                                     uint32_t num_messages,
                                     FreshSymbolCursor& cursor);

// For each database n, pairs a fresh desired symbol with every unexploited
// side-information sum held by the other databases. No input sum may
// contain the desired message.
std::vector<std::vector<KSum>> exploit_side_information(
    const std::vector<std::vector<KSum>>& side_information, uint32_t theta,
    FreshSymbolCursor& cursor);

// Builds the full deterministic plan for L = N^(K-1), N >= 2.
QueryPlan generate_plan(const SchemeParams& params, uint32_t theta);

// K uniform independent permutations, deterministic given the rng state.
PermutationMap sample_permutations(const SchemeParams& params, Rng& rng);

PermutationMap identity_permutations(const SchemeParams& params);

// (N^(K-1))!^K, the number of distinct permutation maps.
BigInt permutation_space_size(const SchemeParams& params);

// Bijection from [0, (L!)^K) onto permutation maps, for exhaustive audits.
PermutationMap unrank_permutations(const SchemeParams& params, uint64_t index);

// Lexicographic unranking of a single permutation of [1..n].
std::vector<uint64_t> unrank_permutation(uint64_t n, uint64_t rank);

// Rewrites every U_k(j) to position gamma_k(j) and sorts each database's
// entries into canonical transmitted order (a function of content only, so
// the order carries no information about theta).
RealizedQueries realize(const QueryPlan& plan, const PermutationMap& perm);

// Canonical transmitted order: term count, then (message, position) terms.
bool realized_order_less(const KSum& a, const KSum& b);

}  // namespace pir
