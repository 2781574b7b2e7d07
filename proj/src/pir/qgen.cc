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

#include "pir/qgen.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pir {

namespace {

// All k-element subsets of [1..K] in lexicographic order.
std::vector<std::vector<uint32_t>> all_types(uint32_t num_messages,
                                             uint32_t k) {
  std::vector<std::vector<uint32_t>> types;
  if (k == 0 || k > num_messages) {
    return types;
  }
  std::vector<uint32_t> current(k);
  std::iota(current.begin(), current.end(), 1);
  while (true) {
    types.push_back(current);
    // advance to the next subset
    int64_t i = static_cast<int64_t>(k) - 1;
    while (i >= 0 && current[i] == num_messages - (k - 1 - i)) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++current[i];
    for (size_t j = i + 1; j < k; ++j) {
      current[j] = current[j - 1] + 1;
    }
  }
  return types;
}

uint64_t count_of_type(const std::vector<KSum>& q,
                       const std::vector<uint32_t>& type) {
  uint64_t count = 0;
  for (const auto& sum : q) {
    if (sum.type() == type) {
      ++count;
    }
  }
  return count;
}

uint64_t max_count(const std::vector<KSum>& q, uint32_t k) {
  std::map<std::vector<uint32_t>, uint64_t> counts;
  uint64_t max = 0;
  for (const auto& sum : q) {
    if (sum.order() == k) {
      max = std::max(max, ++counts[sum.type()]);
    }
  }
  return max;
}

std::vector<KSum> plan_ordered(std::vector<KSum> q) {
  std::sort(q.begin(), q.end(), plan_order_less);
  return q;
}

}  // namespace

FreshSymbolCursor::FreshSymbolCursor(uint32_t num_messages, uint64_t limit)
    : limit_(limit), next_(num_messages, 1) {
  if (num_messages < 1 || limit < 1) {
    throw std::invalid_argument("cursor: empty symbol space");
  }
}

VirtualSymbol FreshSymbolCursor::take(uint32_t message_index) {
  if (message_index < 1 || message_index > next_.size()) {
    throw std::out_of_range("cursor: message index out of range");
  }
  uint64_t& counter = next_[message_index - 1];
  if (counter > limit_) {
    // The generation algorithm guarantees at most `limit` draws per message;
    // running past it means the plan construction itself is broken.
    throw std::logic_error("cursor: fresh symbols exhausted");
  }
  return VirtualSymbol{message_index, counter++};
}

std::vector<KSum> QuerySet::block_partition(uint32_t block,
                                            Partition partition) const {
  std::vector<KSum> result;
  for (const auto& entry : entries) {
    if (entry.block == block && entry.partition == partition) {
      result.push_back(entry.sum);
    }
  }
  return result;
}

uint64_t PermutationMap::apply(uint32_t message_index,
                               uint64_t position) const {
  return gamma.at(message_index - 1).at(position - 1);
}

std::vector<KSum> message_symmetrize(const std::vector<KSum>& q,
                                     uint32_t num_messages,
                                     FreshSymbolCursor& cursor) {
  std::vector<KSum> additions;
  for (uint32_t k = 1; k <= num_messages; ++k) {
    const uint64_t target = max_count(q, k);
    if (target == 0) {
      continue;
    }
    for (const auto& type : all_types(num_messages, k)) {
      for (uint64_t i = count_of_type(q, type); i < target; ++i) {
        std::vector<VirtualSymbol> terms;
        terms.reserve(type.size());
        for (uint32_t message_index : type) {
          terms.push_back(cursor.take(message_index));
        }
        additions.push_back(KSum(std::move(terms)));
      }
    }
  }
  return additions;
}

std::vector<std::vector<KSum>> exploit_side_information(
    const std::vector<std::vector<KSum>>& side_information, uint32_t theta,
    FreshSymbolCursor& cursor) {
  const size_t num_databases = side_information.size();
  std::vector<std::vector<KSum>> ordered;
  ordered.reserve(num_databases);
  for (const auto& fragment : side_information) {
    for (const auto& sum : fragment) {
      if (sum.contains_message(theta)) {
        throw std::invalid_argument(
            "exploit: side information must not contain the desired message");
      }
    }
    ordered.push_back(plan_ordered(fragment));
  }
  std::vector<std::vector<KSum>> output(num_databases);
  for (size_t n = 0; n < num_databases; ++n) {
    for (size_t other = 0; other < num_databases; ++other) {
      if (other == n) {
        continue;
      }
      for (const auto& sum : ordered[other]) {
        std::vector<VirtualSymbol> terms = sum.terms;
        terms.push_back(cursor.take(theta));
        output[n].push_back(KSum(std::move(terms)));
      }
    }
  }
  return output;
}

QueryPlan generate_plan(const SchemeParams& params, uint32_t theta) {
  params.validate();
  const uint32_t n = params.num_databases;
  const uint32_t k = params.num_messages;
  if (n < 2) {
    throw std::invalid_argument("plan: requires N >= 2");
  }
  if (theta < 1 || theta > k) {
    throw std::invalid_argument("plan: desired index out of range");
  }
  const uint64_t length = shortest_capacity_length(n, k);
  if (params.message_length != length) {
    throw std::invalid_argument("plan: message length must equal N^(K-1)");
  }

  FreshSymbolCursor cursor(k, length);
  QueryPlan plan;
  plan.params = params;
  plan.theta = theta;
  plan.per_database.resize(n);

  auto append = [&plan](uint32_t db, const std::vector<KSum>& sums,
                        uint32_t block, Partition partition) {
    for (const auto& sum : sums) {
      plan.per_database[db].entries.push_back({sum, block, partition});
    }
  };

  // Block 1: one fresh desired symbol at database 1, then message symmetry.
  std::vector<KSum> desired = {KSum({cursor.take(theta)})};
  std::vector<std::vector<KSum>> interference(n);
  interference[0] = message_symmetrize(desired, k, cursor);
  append(0, desired, 1, Partition::kDesired);
  append(0, interference[0], 1, Partition::kInterference);

  // Blocks 2..K: exploit the previous block's side information, then restore
  // message symmetry at every database.
  for (uint32_t block = 2; block <= k; ++block) {
    std::vector<std::vector<KSum>> exploited =
        exploit_side_information(interference, theta, cursor);
    for (uint32_t db = 0; db < n; ++db) {
      interference[db] = message_symmetrize(exploited[db], k, cursor);
      append(db, exploited[db], block, Partition::kDesired);
      append(db, interference[db], block, Partition::kInterference);
    }
  }

  // Every virtual symbol of the desired message must be scheduled exactly
  // once across all databases.
  uint64_t desired_terms = 0;
  for (const auto& query_set : plan.per_database) {
    for (const auto& entry : query_set.entries) {
      if (entry.sum.contains_message(theta)) {
        ++desired_terms;
      }
    }
  }
  if (desired_terms != length) {
    throw std::logic_error("plan: desired symbol coverage mismatch");
  }
  return plan;
}

PermutationMap sample_permutations(const SchemeParams& params, Rng& rng) {
  const uint64_t length =
      shortest_capacity_length(params.num_databases, params.num_messages);
  PermutationMap map;
  map.gamma.reserve(params.num_messages);
  for (uint32_t k = 0; k < params.num_messages; ++k) {
    map.gamma.push_back(rng.permutation(length));
  }
  return map;
}

PermutationMap identity_permutations(const SchemeParams& params) {
  const uint64_t length =
      shortest_capacity_length(params.num_databases, params.num_messages);
  PermutationMap map;
  std::vector<uint64_t> identity(length);
  std::iota(identity.begin(), identity.end(), 1);
  map.gamma.assign(params.num_messages, identity);
  return map;
}

namespace {

BigInt factorial_big(uint64_t n) {
  BigInt f = 1;
  for (uint64_t i = 2; i <= n; ++i) {
    f *= i;
  }
  return f;
}

}  // namespace

BigInt permutation_space_size(const SchemeParams& params) {
  const uint64_t length =
      shortest_capacity_length(params.num_databases, params.num_messages);
  BigInt single = factorial_big(length);
  BigInt total = 1;
  for (uint32_t k = 0; k < params.num_messages; ++k) {
    total *= single;
  }
  return total;
}

std::vector<uint64_t> unrank_permutation(uint64_t n, uint64_t rank) {
  std::vector<uint64_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::vector<uint64_t> factorial(n, 1);
  for (uint64_t i = 1; i < n; ++i) {
    factorial[i] = factorial[i - 1] * i;
  }
  std::vector<uint64_t> result;
  result.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t f = factorial[n - 1 - i];
    const uint64_t digit = rank / f;
    rank %= f;
    if (digit >= remaining.size()) {
      throw std::out_of_range("unrank: rank out of range");
    }
    result.push_back(remaining[digit]);
    remaining.erase(remaining.begin() + static_cast<int64_t>(digit));
  }
  return result;
}

PermutationMap unrank_permutations(const SchemeParams& params,
                                   uint64_t index) {
  const uint64_t length =
      shortest_capacity_length(params.num_databases, params.num_messages);
  const uint64_t single =
      to_u64(factorial_big(length), "permutation space");
  PermutationMap map;
  map.gamma.reserve(params.num_messages);
  for (uint32_t k = 0; k < params.num_messages; ++k) {
    map.gamma.push_back(unrank_permutation(length, index % single));
    index /= single;
  }
  if (index != 0) {
    throw std::out_of_range("unrank: permutation index out of range");
  }
  return map;
}

bool realized_order_less(const KSum& a, const KSum& b) {
  if (a.terms.size() != b.terms.size()) {
    return a.terms.size() < b.terms.size();
  }
  return a.terms < b.terms;
}

RealizedQueries realize(const QueryPlan& plan, const PermutationMap& perm) {
  if (perm.gamma.size() != plan.params.num_messages) {
    throw std::invalid_argument("realize: permutation count mismatch");
  }
  RealizedQueries realized;
  realized.per_database.resize(plan.per_database.size());
  realized.entry_order.resize(plan.per_database.size());
  for (size_t db = 0; db < plan.per_database.size(); ++db) {
    const auto& entries = plan.per_database[db].entries;
    std::vector<std::pair<KSum, size_t>> tagged;
    tagged.reserve(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
      std::vector<VirtualSymbol> terms = entries[i].sum.terms;
      for (auto& term : terms) {
        term.position = perm.apply(term.message_index, term.position);
      }
      tagged.emplace_back(KSum(std::move(terms)), i);
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& x, const auto& y) {
                return realized_order_less(x.first, y.first);
              });
    auto& query = realized.per_database[db];
    auto& order = realized.entry_order[db];
    query.entries.reserve(tagged.size());
    order.resize(tagged.size());
    for (size_t pos = 0; pos < tagged.size(); ++pos) {
      query.entries.push_back(tagged[pos].first);
      order[tagged[pos].second] = pos;
    }
  }
  return realized;
}

}  // namespace pir
