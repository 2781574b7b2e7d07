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

#include "pir/composite.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pir {

namespace {

SchemeParams capacity_sub_params(const SchemeParams& params, uint64_t length) {
  SchemeParams sub = params;
  sub.message_length = length;
  sub.message_alphabet = params.download_alphabet;
  return sub;
}

BigInt segment_space(const SchemeParams& params, const SegmentSpec& segment,
                     NegativeControl control) {
  switch (segment.kind) {
    case SchemeKind::kCapacity:
      if (control == NegativeControl::kIdentityPermutations) {
        return 1;
      }
      return permutation_space_size(
          capacity_sub_params(params, segment.length));
    case SchemeKind::kShort: {
      if (control == NegativeControl::kZeroCoins) {
        return 1;
      }
      BigInt space = 1;
      space <<= params.num_messages * segment.length;
      return space;
    }
    case SchemeKind::kTrivial:
    case SchemeKind::kComposite:
      return 1;
  }
  return 1;
}

}  // namespace

Decomposition decompose(const SchemeParams& params) {
  params.validate();
  if (params.num_databases < 2) {
    throw std::invalid_argument(
        "decompose: N = 1 is served by the trivial full download");
  }
  const uint32_t n = params.num_databases;
  const uint64_t group = shortest_capacity_length(n, params.num_messages);
  const uint64_t length = params.message_length;

  Decomposition d;
  d.capacity_groups = length / group;
  const uint64_t remainder = length % group;
  d.short_groups = remainder / (n - 1);
  d.residual = remainder % (n - 1);

  uint64_t offset = 0;
  for (uint64_t g = 0; g < d.capacity_groups; ++g) {
    d.segments.push_back({SchemeKind::kCapacity, offset, group, n});
    offset += group;
  }
  for (uint64_t g = 0; g < d.short_groups; ++g) {
    d.segments.push_back(
        {SchemeKind::kShort, offset, static_cast<uint64_t>(n - 1), n});
    offset += n - 1;
  }
  if (d.residual > 0) {
    // Residual short-scheme instance on the fixed database prefix.
    d.segments.push_back({SchemeKind::kShort, offset, d.residual,
                          static_cast<uint32_t>(d.residual + 1)});
    offset += d.residual;
  }
  return d;
}

Decomposition scheme_segments(const SchemeParams& params) {
  params.validate();
  if (params.num_databases == 1) {
    Decomposition d;
    d.segments.push_back(
        {SchemeKind::kTrivial, 0, params.message_length, 1});
    return d;
  }
  return decompose(params);
}

uint64_t composite_cost(const SchemeParams& params) {
  const Decomposition d = decompose(params);
  const uint32_t n = params.num_databases;
  const uint64_t group = shortest_capacity_length(n, params.num_messages);
  const Rational c = capacity(n, params.num_messages);
  // group / C is an integer: the capacity numerator is exactly `group`.
  BigInt total = BigInt(d.capacity_groups) * (BigInt(group) * c.den / c.num);
  total += BigInt(d.short_groups) * n;
  if (d.residual > 0) {
    total += d.residual + 1;
  }
  return to_u64(total, "composite cost");
}

CompositeRandomness sample_randomness(const SchemeParams& params,
                                      const Decomposition& decomposition,
                                      uint64_t seed, NegativeControl control) {
  CompositeRandomness randomness;
  randomness.reserve(decomposition.segments.size());
  for (size_t i = 0; i < decomposition.segments.size(); ++i) {
    const SegmentSpec& segment = decomposition.segments[i];
    Rng rng(derive_seed(seed, i));
    SegmentRandomness r;
    switch (segment.kind) {
      case SchemeKind::kCapacity: {
        const SchemeParams sub = capacity_sub_params(params, segment.length);
        r.gamma = control == NegativeControl::kIdentityPermutations
                      ? identity_permutations(sub)
                      : sample_permutations(sub, rng);
        break;
      }
      case SchemeKind::kShort:
        r.coins = control == NegativeControl::kZeroCoins
                      ? zero_coins(params.num_messages, segment.length)
                      : sample_coins(params.num_messages, segment.length, rng);
        break;
      case SchemeKind::kTrivial:
      case SchemeKind::kComposite:
        break;
    }
    randomness.push_back(std::move(r));
  }
  return randomness;
}

BigInt randomness_space_size(const SchemeParams& params,
                             const Decomposition& decomposition,
                             NegativeControl control) {
  BigInt total = 1;
  for (const auto& segment : decomposition.segments) {
    total *= segment_space(params, segment, control);
  }
  return total;
}

CompositeRandomness unrank_randomness(const SchemeParams& params,
                                      const Decomposition& decomposition,
                                      uint64_t index, NegativeControl control) {
  CompositeRandomness randomness;
  randomness.reserve(decomposition.segments.size());
  for (const auto& segment : decomposition.segments) {
    const uint64_t space =
        to_u64(segment_space(params, segment, control), "randomness space");
    const uint64_t digit = index % space;
    index /= space;
    SegmentRandomness r;
    switch (segment.kind) {
      case SchemeKind::kCapacity: {
        const SchemeParams sub = capacity_sub_params(params, segment.length);
        r.gamma = control == NegativeControl::kIdentityPermutations
                      ? identity_permutations(sub)
                      : unrank_permutations(sub, digit);
        break;
      }
      case SchemeKind::kShort:
        r.coins = control == NegativeControl::kZeroCoins
                      ? zero_coins(params.num_messages, segment.length)
                      : unrank_coins(params.num_messages, segment.length,
                                     digit);
        break;
      case SchemeKind::kTrivial:
      case SchemeKind::kComposite:
        break;
    }
    randomness.push_back(std::move(r));
  }
  if (index != 0) {
    throw std::out_of_range("unrank: randomness index out of range");
  }
  return randomness;
}

ComposedQueries compose_queries(const SchemeParams& params, uint32_t theta,
                                const CompositeRandomness& randomness) {
  params.validate();
  if (!params.matched()) {
    throw std::invalid_argument(
        "compose: requires matched alphabets; transcode first");
  }
  if (theta < 1 || theta > params.num_messages) {
    throw std::invalid_argument("compose: desired index out of range");
  }
  const uint32_t n = params.num_databases;
  ComposedQueries composed;
  composed.params = params;
  composed.theta = theta;
  composed.decomposition = scheme_segments(params);
  if (randomness.size() != composed.decomposition.segments.size()) {
    throw std::invalid_argument("compose: randomness segment count mismatch");
  }

  std::vector<std::vector<WireSum>> all_sums(n);
  for (size_t si = 0; si < composed.decomposition.segments.size(); ++si) {
    const SegmentSpec& spec = composed.decomposition.segments[si];
    SegmentQueries sq;
    sq.spec = spec;
    sq.randomness = randomness[si];
    sq.sums.resize(n);
    switch (spec.kind) {
      case SchemeKind::kCapacity: {
        const SchemeParams sub = capacity_sub_params(params, spec.length);
        sq.plan = generate_plan(sub, theta);
        RealizedQueries realized = realize(sq.plan, sq.randomness.gamma);
        sq.entry_order = std::move(realized.entry_order);
        for (uint32_t db = 0; db < n; ++db) {
          for (const auto& entry : realized.per_database[db].entries) {
            std::vector<VirtualSymbol> terms = entry.terms;
            for (auto& term : terms) {
              term.position += spec.offset;
            }
            sq.sums[db].push_back(WireSum(std::move(terms)));
          }
        }
        break;
      }
      case SchemeKind::kShort: {
        const std::vector<CoinVector> queries = short_queries(
            spec.databases_used, params.num_messages, theta, sq.randomness.coins);
        for (uint32_t db = 0; db < spec.databases_used; ++db) {
          std::vector<VirtualSymbol> terms;
          for (uint32_t k = 1; k <= params.num_messages; ++k) {
            for (uint64_t i = 1; i <= spec.length; ++i) {
              if (queries[db].at(k, i)) {
                terms.push_back(VirtualSymbol{k, spec.offset + i});
              }
            }
          }
          sq.sums[db].push_back(WireSum(std::move(terms)));
        }
        break;
      }
      case SchemeKind::kTrivial: {
        for (uint32_t k = 1; k <= params.num_messages; ++k) {
          for (uint64_t pos = 1; pos <= spec.length; ++pos) {
            sq.sums[0].push_back(
                WireSum({VirtualSymbol{k, spec.offset + pos}}));
          }
        }
        break;
      }
      case SchemeKind::kComposite:
        throw std::logic_error("compose: nested composite segment");
    }
    for (uint32_t db = 0; db < n; ++db) {
      all_sums[db].insert(all_sums[db].end(), sq.sums[db].begin(),
                          sq.sums[db].end());
    }
    composed.segments.push_back(std::move(sq));
  }

  const SchemeKind kind = composed.segments.size() == 1
                              ? composed.segments[0].spec.kind
                              : SchemeKind::kComposite;
  composed.per_database.reserve(n);
  for (uint32_t db = 0; db < n; ++db) {
    WireQuery query;
    query.kind = kind;
    query.alphabet = params.download_alphabet;
    query.sums = std::move(all_sums[db]);
    composed.per_database.push_back(std::move(query));
  }
  return composed;
}

std::vector<uint64_t> expected_answer_sizes(
    const SchemeParams& params, const Decomposition& decomposition) {
  std::vector<uint64_t> sizes(params.num_databases, 0);
  for (const auto& segment : decomposition.segments) {
    switch (segment.kind) {
      case SchemeKind::kCapacity: {
        const CountProfile profile =
            count_profile(params.num_databases, params.num_messages);
        for (uint32_t db = 1; db <= params.num_databases; ++db) {
          sizes[db - 1] += profile.entries_per_database(db);
        }
        break;
      }
      case SchemeKind::kShort:
        for (uint32_t db = 0; db < segment.databases_used; ++db) {
          sizes[db] += 1;
        }
        break;
      case SchemeKind::kTrivial:
        sizes[0] +=
            static_cast<uint64_t>(params.num_messages) * segment.length;
        break;
      case SchemeKind::kComposite:
        break;
    }
  }
  return sizes;
}

namespace {

uint64_t answer_at(const std::vector<AnswerString>& answers, uint32_t db,
                   size_t offset, size_t index) {
  const auto& symbols = answers[db].symbols;
  if (offset + index >= symbols.size()) {
    throw ProtocolError("decode: answer string too short");
  }
  return symbols[offset + index];
}

void decode_capacity_segment(const SegmentQueries& sq,
                             const std::vector<AnswerString>& answers,
                             const std::vector<size_t>& offsets,
                             uint64_t alphabet, uint32_t theta,
                             Message& decoded) {
  const QueryPlan& plan = sq.plan;
  const uint32_t n = plan.params.num_databases;
  const uint64_t length = plan.params.message_length;

  // Where each plan sum lives, for side-information lookups.
  std::map<KSum, std::pair<uint32_t, size_t>> location;
  for (uint32_t db = 0; db < n; ++db) {
    const auto& entries = plan.per_database[db].entries;
    for (size_t e = 0; e < entries.size(); ++e) {
      location.emplace(entries[e].sum, std::make_pair(db, e));
    }
  }
  auto answer_of = [&](uint32_t db, size_t entry) {
    return answer_at(answers, db, offsets[db], sq.entry_order[db][entry]);
  };

  std::vector<uint64_t> values(length, 0);
  std::vector<bool> seen(length, false);
  for (uint32_t db = 0; db < n; ++db) {
    const auto& entries = plan.per_database[db].entries;
    for (size_t e = 0; e < entries.size(); ++e) {
      const auto& entry = entries[e];
      if (entry.partition != Partition::kDesired) {
        continue;
      }
      uint64_t position = 0;
      for (const auto& term : entry.sum.terms) {
        if (term.message_index == theta) {
          position = term.position;
          break;
        }
      }
      uint64_t value = answer_of(db, e) % alphabet;
      if (entry.block > 1) {
        const KSum residual = entry.sum.without_message(theta);
        auto it = location.find(residual);
        if (it == location.end() || it->second.first == db) {
          throw ProtocolError("decode: missing side information");
        }
        const uint64_t side =
            answer_of(it->second.first, it->second.second) % alphabet;
        value = (value + alphabet - side) % alphabet;
      }
      if (position == 0 || seen[position - 1]) {
        throw ProtocolError("decode: desired coverage mismatch");
      }
      seen[position - 1] = true;
      values[position - 1] = value;
    }
  }
  for (uint64_t j = 1; j <= length; ++j) {
    if (!seen[j - 1]) {
      throw ProtocolError("decode: desired coverage mismatch");
    }
    const uint64_t real_position =
        sq.spec.offset + sq.randomness.gamma.apply(theta, j);
    decoded[real_position - 1] = values[j - 1];
  }
}

}  // namespace

Message decode_composed(const ComposedQueries& composed,
                        const std::vector<AnswerString>& answers) {
  const SchemeParams& params = composed.params;
  const uint32_t n = params.num_databases;
  if (answers.size() != n) {
    throw ProtocolError("decode: need one answer string per database");
  }
  const uint64_t alphabet = params.download_alphabet;
  Message decoded(params.message_length, 0);
  std::vector<size_t> offsets(n, 0);
  for (const auto& sq : composed.segments) {
    switch (sq.spec.kind) {
      case SchemeKind::kCapacity:
        decode_capacity_segment(sq, answers, offsets, alphabet,
                                composed.theta, decoded);
        break;
      case SchemeKind::kShort: {
        std::vector<uint64_t> collected;
        collected.reserve(sq.spec.databases_used);
        for (uint32_t db = 0; db < sq.spec.databases_used; ++db) {
          collected.push_back(answer_at(answers, db, offsets[db], 0));
        }
        const std::vector<uint64_t> segment = short_decode(
            collected, sq.randomness.coins, composed.theta, alphabet);
        for (uint64_t i = 0; i < segment.size(); ++i) {
          decoded[sq.spec.offset + i] = segment[i];
        }
        break;
      }
      case SchemeKind::kTrivial: {
        for (size_t i = 0; i < sq.sums[0].size(); ++i) {
          const auto& term = sq.sums[0][i].terms[0];
          if (term.message_index == composed.theta) {
            decoded[term.position - 1] = answer_at(answers, 0, offsets[0], i);
          }
        }
        break;
      }
      case SchemeKind::kComposite:
        break;
    }
    for (uint32_t db = 0; db < n; ++db) {
      offsets[db] += sq.sums[db].size();
    }
  }
  for (uint32_t db = 0; db < n; ++db) {
    if (offsets[db] != answers[db].symbols.size()) {
      throw ProtocolError("decode: answer length mismatch");
    }
  }
  return decoded;
}

Transcript composite_run(const SchemeParams& params, uint32_t theta,
                         const MessageStore& store,
                         const CompositeRandomness& randomness) {
  store.validate(params);
  ComposedQueries composed = compose_queries(params, theta, randomness);

  Transcript transcript;
  transcript.params = params;
  transcript.theta = theta;
  transcript.transcoded_length = params.message_length;
  transcript.queries = composed.per_database;
  transcript.answers.reserve(params.num_databases);
  transcript.per_db_symbols.reserve(params.num_databases);

  const std::vector<uint64_t> expected =
      expected_answer_sizes(params, composed.decomposition);
  for (uint32_t db = 0; db < params.num_databases; ++db) {
    AnswerString answer = answer_query(composed.per_database[db], store);
    // Answer sizes are fixed by (params, db); any deviation is a bug, since
    // download accounting relies on realization-independent sizes.
    if (answer.symbols.size() != expected[db]) {
      throw ProtocolError("run: answer size not realization independent");
    }
    transcript.per_db_symbols.push_back(answer.symbols.size());
    transcript.total_download += answer.symbols.size();
    transcript.answers.push_back(std::move(answer));
  }
  transcript.decoded = decode_composed(composed, transcript.answers);
  return transcript;
}

Transcript composite_run(const SchemeParams& params, uint32_t theta,
                         const MessageStore& store, uint64_t seed) {
  const Decomposition decomposition = scheme_segments(params);
  const CompositeRandomness randomness =
      sample_randomness(params, decomposition, seed);
  Transcript transcript = composite_run(params, theta, store, randomness);
  transcript.seed = seed;
  return transcript;
}

}  // namespace pir
