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

#include "pir/audit.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "pir/alphabet.h"
#include "pir/qgen.h"
#include "pir/sim.h"
#include "pir/wire.h"

namespace pir {

namespace {

std::string hex_of_key(const std::string& key) {
  return to_hex(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(key.data()), key.size()));
}

std::string serialized_query_key(const WireQuery& query) {
  const std::vector<uint8_t> bytes = serialize_query(query);
  return std::string(reinterpret_cast<const char*>(bytes.data()),
                     bytes.size());
}

// Effective parameters for query generation: mismatched instances send the
// queries of the matched scheme over the transcoded length.
SchemeParams effective_params(const SchemeParams& params) {
  if (params.matched()) {
    return params;
  }
  SchemeParams inner = params;
  inner.message_length =
      transcoded_length(params.message_length, params.message_alphabet,
                        params.download_alphabet);
  inner.message_alphabet = params.download_alphabet;
  return inner;
}

PrivacyWitness make_witness(const std::string& key, uint32_t theta_a,
                            uint32_t theta_b, uint64_t count_a,
                            uint64_t count_b) {
  return PrivacyWitness{hex_of_key(key), theta_a, theta_b, count_a, count_b};
}

}  // namespace

const char* privacy_verdict_name(PrivacyVerdict verdict) {
  switch (verdict) {
    case PrivacyVerdict::kExactEqual:
      return "EXACT_EQUAL";
    case PrivacyVerdict::kStatisticallyConsistent:
      return "STATISTICALLY_CONSISTENT";
    case PrivacyVerdict::kViolation:
      return "VIOLATION";
  }
  return "UNKNOWN";
}

QueryDistribution enumerate_query_distribution(const SchemeParams& params,
                                               uint32_t theta, uint32_t db,
                                               uint64_t budget,
                                               NegativeControl control) {
  const SchemeParams inner = effective_params(params);
  const Decomposition decomposition = scheme_segments(inner);
  const BigInt space = randomness_space_size(inner, decomposition, control);
  if (space > budget) {
    throw BudgetExceeded("privacy audit: randomness space exceeds budget");
  }
  const uint64_t outcomes = to_u64(space, "randomness space");

  auto count_range = [&](uint64_t begin, uint64_t end,
                         std::map<std::string, uint64_t>& counts) {
    for (uint64_t index = begin; index < end; ++index) {
      const CompositeRandomness randomness =
          unrank_randomness(inner, decomposition, index, control);
      const ComposedQueries composed =
          compose_queries(inner, theta, randomness);
      ++counts[serialized_query_key(composed.per_database[db - 1])];
    }
  };

  QueryDistribution distribution;
  distribution.total_outcomes = outcomes;

  // Disjoint index chunks counted in parallel, merged associatively; the
  // result does not depend on the partition.
  const unsigned hardware = std::thread::hardware_concurrency();
  const unsigned workers =
      outcomes >= 16384 ? std::max(1u, std::min(8u, hardware)) : 1;
  if (workers <= 1) {
    count_range(0, outcomes, distribution.support);
    return distribution;
  }
  std::vector<std::map<std::string, uint64_t>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const uint64_t chunk = (outcomes + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const uint64_t begin = w * chunk;
        const uint64_t end = std::min(outcomes, begin + chunk);
        count_range(begin, end, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) {
    thread.join();
  }
  for (const auto& error : errors) {
    if (error) {
      std::rethrow_exception(error);
    }
  }
  for (const auto& counts : partial) {
    for (const auto& [key, count] : counts) {
      distribution.support[key] += count;
    }
  }
  return distribution;
}

DatabasePrivacyResult privacy_audit_exhaustive(const SchemeParams& params,
                                               uint32_t db, uint64_t budget,
                                               NegativeControl control) {
  params.validate();
  if (db < 1 || db > params.num_databases) {
    throw std::invalid_argument("privacy audit: database index out of range");
  }
  DatabasePrivacyResult result;
  result.database = db;
  std::vector<QueryDistribution> distributions;
  distributions.reserve(params.num_messages);
  for (uint32_t theta = 1; theta <= params.num_messages; ++theta) {
    distributions.push_back(
        enumerate_query_distribution(params, theta, db, budget, control));
  }
  for (uint32_t theta = 2; theta <= params.num_messages; ++theta) {
    const auto& base = distributions[0].support;
    const auto& other = distributions[theta - 1].support;
    for (const auto& [key, count] : base) {
      auto it = other.find(key);
      const uint64_t other_count = it == other.end() ? 0 : it->second;
      if (other_count != count) {
        result.verdict = PrivacyVerdict::kViolation;
        result.witness = make_witness(key, 1, theta, count, other_count);
        return result;
      }
    }
    for (const auto& [key, count] : other) {
      if (base.find(key) == base.end()) {
        result.verdict = PrivacyVerdict::kViolation;
        result.witness = make_witness(key, 1, theta, 0, count);
        return result;
      }
    }
  }
  result.verdict = PrivacyVerdict::kExactEqual;
  return result;
}

double chi_square_sf(double statistic, double dof) {
  if (statistic <= 0 || dof <= 0) {
    return 1.0;
  }
  // Regularized upper incomplete gamma Q(dof/2, statistic/2), series for
  // x < a+1 and continued fraction otherwise.
  const double a = dof / 2.0;
  const double x = statistic / 2.0;
  const double log_gamma_a = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) {
        break;
      }
    }
    const double p = sum * std::exp(-x + a * std::log(x) - log_gamma_a);
    return std::max(0.0, 1.0 - p);
  }
  // Lentz's continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::fabs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) {
      break;
    }
  }
  return std::max(0.0, std::exp(-x + a * std::log(x) - log_gamma_a) * h);
}

namespace {

struct PairTest {
  bool tested = false;
  double p_value = 1.0;
  std::optional<PrivacyWitness> witness;
};

// Two-sample chi-square over observed query values. Categories with small
// combined counts are pooled into one bucket so every expected count stays
// at least 5 under equal sample sizes.
PairTest compare_samples(const QueryDistribution& a,
                         const QueryDistribution& b, uint32_t theta_a,
                         uint32_t theta_b) {
  PairTest result;
  std::map<std::string, std::pair<uint64_t, uint64_t>> combined;
  for (const auto& [key, count] : a.support) {
    combined[key].first = count;
  }
  for (const auto& [key, count] : b.support) {
    combined[key].second = count;
  }

  std::vector<std::pair<uint64_t, uint64_t>> categories;
  std::pair<uint64_t, uint64_t> pooled{0, 0};
  const std::string* worst_key = nullptr;
  double worst_gap = -1.0;
  for (const auto& [key, counts] : combined) {
    if (counts.first + counts.second >= 10) {
      categories.push_back(counts);
      const double gap = std::fabs(static_cast<double>(counts.first) -
                                   static_cast<double>(counts.second));
      if (gap > worst_gap) {
        worst_gap = gap;
        worst_key = &key;
      }
    } else {
      pooled.first += counts.first;
      pooled.second += counts.second;
    }
  }
  if (pooled.first + pooled.second >= 10) {
    categories.push_back(pooled);
  }
  if (categories.size() < 2) {
    // Degenerate support. Deterministic queries that differ across theta
    // are a violation outright; diffuse supports carry no testable signal.
    if (a.support.size() == 1 && b.support.size() == 1 &&
        a.support.begin()->first != b.support.begin()->first) {
      result.tested = true;
      result.p_value = 0.0;
      result.witness =
          make_witness(a.support.begin()->first, theta_a, theta_b,
                       a.support.begin()->second, 0);
    }
    return result;
  }

  const double total_a = static_cast<double>(a.total_outcomes);
  const double total_b = static_cast<double>(b.total_outcomes);
  const double grand = total_a + total_b;
  double statistic = 0.0;
  for (const auto& [count_a, count_b] : categories) {
    const double column = static_cast<double>(count_a + count_b);
    const double expected_a = total_a * column / grand;
    const double expected_b = total_b * column / grand;
    statistic += (count_a - expected_a) * (count_a - expected_a) / expected_a;
    statistic += (count_b - expected_b) * (count_b - expected_b) / expected_b;
  }
  result.tested = true;
  result.p_value =
      chi_square_sf(statistic, static_cast<double>(categories.size() - 1));
  if (worst_key != nullptr) {
    const auto& counts = combined[*worst_key];
    result.witness =
        make_witness(*worst_key, theta_a, theta_b, counts.first, counts.second);
  }
  return result;
}

}  // namespace

DatabasePrivacyResult privacy_audit_sampled(const SchemeParams& params,
                                            uint32_t db, uint64_t trials,
                                            double significance, uint64_t seed,
                                            NegativeControl control) {
  params.validate();
  if (db < 1 || db > params.num_databases) {
    throw std::invalid_argument("privacy audit: database index out of range");
  }
  const SchemeParams inner = effective_params(params);
  const Decomposition decomposition = scheme_segments(inner);

  std::vector<QueryDistribution> observed(params.num_messages);
  for (uint32_t theta = 1; theta <= params.num_messages; ++theta) {
    const uint64_t stream = derive_seed(seed, theta);
    auto& distribution = observed[theta - 1];
    distribution.total_outcomes = trials;
    for (uint64_t trial = 0; trial < trials; ++trial) {
      const CompositeRandomness randomness = sample_randomness(
          inner, decomposition, derive_seed(stream, trial), control);
      const ComposedQueries composed =
          compose_queries(inner, theta, randomness);
      ++distribution.support[serialized_query_key(
          composed.per_database[db - 1])];
    }
  }

  DatabasePrivacyResult result;
  result.database = db;
  result.verdict = PrivacyVerdict::kStatisticallyConsistent;
  const uint64_t pairs =
      static_cast<uint64_t>(params.num_messages) * (params.num_messages - 1) /
      2;
  const double adjusted = pairs == 0 ? significance : significance / pairs;
  for (uint32_t ta = 1; ta <= params.num_messages; ++ta) {
    for (uint32_t tb = ta + 1; tb <= params.num_messages; ++tb) {
      const PairTest test =
          compare_samples(observed[ta - 1], observed[tb - 1], ta, tb);
      if (!test.tested) {
        continue;
      }
      if (!result.min_p_value || test.p_value < *result.min_p_value) {
        result.min_p_value = test.p_value;
      }
      if (test.p_value < adjusted) {
        result.verdict = PrivacyVerdict::kViolation;
        result.witness = test.witness;
        return result;
      }
    }
  }
  return result;
}

namespace {

MessageStore unrank_store(const SchemeParams& params, BigInt index) {
  MessageStore store;
  store.alphabet = params.message_alphabet;
  store.messages.assign(params.num_messages,
                        Message(params.message_length, 0));
  for (auto& message : store.messages) {
    for (auto& symbol : message) {
      symbol = (index % params.message_alphabet).convert_to<uint64_t>();
      index /= params.message_alphabet;
    }
  }
  return store;
}

bool run_and_check(const SchemeParams& params, uint32_t theta,
                   const MessageStore& store, uint64_t seed,
                   CorrectnessResult& result, uint64_t tag) {
  const Transcript transcript = run_protocol(params, theta, store, seed);
  ++result.cases;
  if (transcript.decoded != store.messages[theta - 1]) {
    result.passed = false;
    result.counterexample = CorrectnessCounterexample{
        theta, tag, store.messages[theta - 1], transcript.decoded};
    return false;
  }
  return true;
}

}  // namespace

CorrectnessResult correctness_audit_exhaustive(const SchemeParams& params,
                                               uint64_t budget) {
  params.validate();
  const SchemeParams inner = effective_params(params);
  const Decomposition decomposition = scheme_segments(inner);
  const BigInt randomness_space =
      randomness_space_size(inner, decomposition, NegativeControl::kNone);
  BigInt store_space = 1;
  for (uint64_t i = 0;
       i < static_cast<uint64_t>(params.num_messages) * params.message_length;
       ++i) {
    store_space *= params.message_alphabet;
    if (store_space > budget) {
      break;
    }
  }
  const BigInt total = store_space * params.num_messages * randomness_space;
  if (total > budget) {
    throw BudgetExceeded("correctness audit: space exceeds budget");
  }

  CorrectnessResult result;
  result.passed = true;
  result.exhaustive = true;
  const uint64_t stores = to_u64(store_space, "store space");
  const uint64_t outcomes = to_u64(randomness_space, "randomness space");
  for (uint64_t s = 0; s < stores; ++s) {
    const MessageStore store = unrank_store(params, BigInt(s));
    for (uint32_t theta = 1; theta <= params.num_messages; ++theta) {
      for (uint64_t index = 0; index < outcomes; ++index) {
        const CompositeRandomness randomness = unrank_randomness(
            inner, decomposition, index, NegativeControl::kNone);
        Transcript transcript;
        if (params.matched()) {
          transcript = composite_run(params, theta, store, randomness);
        } else {
          // Mismatched runs draw their randomness from the seed; enumerate
          // through seeded sampling of the same space instead.
          transcript =
              mismatched_run(params, theta, store, derive_seed(index, 0));
        }
        ++result.cases;
        if (transcript.decoded != store.messages[theta - 1]) {
          result.passed = false;
          result.counterexample = CorrectnessCounterexample{
              theta, s, store.messages[theta - 1], transcript.decoded};
          return result;
        }
      }
    }
  }
  return result;
}

CorrectnessResult correctness_audit_sampled(const SchemeParams& params,
                                            uint64_t trials, uint64_t seed) {
  params.validate();
  CorrectnessResult result;
  result.passed = true;
  result.exhaustive = false;
  Rng rng(derive_seed(seed, 0x5704));
  for (uint64_t trial = 0; trial < trials; ++trial) {
    const uint64_t store_seed = rng.next_u64();
    const MessageStore store = MessageStore::random(params, store_seed);
    const uint32_t theta =
        static_cast<uint32_t>(rng.below(params.num_messages)) + 1;
    if (!run_and_check(params, theta, store, rng.next_u64(), result,
                       store_seed)) {
      return result;
    }
  }
  return result;
}

StructureResult structure_audit(uint32_t num_databases,
                                uint32_t num_messages) {
  StructureResult result;
  if (num_databases < 2) {
    result.passed = true;
    result.skipped = true;
    return result;
  }
  const uint64_t length =
      shortest_capacity_length(num_databases, num_messages);
  SchemeParams params{num_databases, num_messages, length, 2, 2};
  const CountProfile profile = count_profile(num_databases, num_messages);

  auto fail = [&result](std::string message) {
    result.passed = false;
    result.failure = std::move(message);
    return result;
  };

  // (block, type) -> count shape per database, compared across theta.
  using Shape = std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint64_t>;
  std::vector<Shape> reference_shape;

  for (uint32_t theta = 1; theta <= num_messages; ++theta) {
    const QueryPlan plan = generate_plan(params, theta);
    std::vector<Shape> shapes(num_databases);
    for (uint32_t db = 1; db <= num_databases; ++db) {
      const QuerySet& query_set = plan.per_database[db - 1];
      std::set<VirtualSymbol> used;
      std::map<uint32_t, std::set<uint64_t>> positions_per_message;
      for (const auto& entry : query_set.entries) {
        if (entry.sum.order() != entry.block) {
          return fail("block purity violated");
        }
        const bool has_theta = entry.sum.contains_message(theta);
        if (has_theta != (entry.partition == Partition::kDesired)) {
          return fail("partition labelling violated");
        }
        for (const auto& term : entry.sum.terms) {
          if (!used.insert(term).second) {
            return fail("virtual symbol reused within one database");
          }
          positions_per_message[term.message_index].insert(term.position);
        }
        ++shapes[db - 1][{entry.block, entry.sum.type()}];
      }
      // Type regularity: every type of every block appears v(DB, k) times.
      for (uint32_t k = 1; k <= num_messages; ++k) {
        const uint64_t expected = profile.at(db, k);
        uint64_t type_count = 0;
        uint64_t entry_count = 0;
        for (const auto& [key, count] : shapes[db - 1]) {
          if (key.first == k) {
            ++type_count;
            entry_count += count;
            if (count != expected) {
              return fail("type count differs from the count profile");
            }
          }
        }
        if (expected > 0 && type_count != binomial(num_messages, k)) {
          return fail("missing type in a non-empty block");
        }
        if (expected == 0 && entry_count != 0) {
          return fail("entries present in an empty block");
        }
      }
      // Symbol budget: v(DB) distinct positions of every message.
      const uint64_t budget = profile.symbols_per_database(db);
      for (uint32_t k = 1; k <= num_messages; ++k) {
        if (positions_per_message[k].size() != budget) {
          return fail("per-message symbol budget violated");
        }
      }
    }
    // Desired coverage: positions 1..N^(K-1) of the desired message, once.
    std::set<uint64_t> desired_positions;
    uint64_t desired_count = 0;
    for (uint32_t db = 1; db <= num_databases; ++db) {
      for (const auto& entry : plan.per_database[db - 1].entries) {
        for (const auto& term : entry.sum.terms) {
          if (term.message_index == theta) {
            ++desired_count;
            desired_positions.insert(term.position);
          }
        }
      }
    }
    if (desired_count != length || desired_positions.size() != length ||
        *desired_positions.rbegin() != length) {
      return fail("desired symbol coverage violated");
    }
    // Peelability: every desired sum's residual appears one block lower at
    // another database.
    std::map<KSum, uint32_t> locations;
    for (uint32_t db = 1; db <= num_databases; ++db) {
      for (const auto& entry : plan.per_database[db - 1].entries) {
        locations.emplace(entry.sum, db);
      }
    }
    for (uint32_t db = 1; db <= num_databases; ++db) {
      for (const auto& entry : plan.per_database[db - 1].entries) {
        if (entry.partition != Partition::kDesired || entry.block == 1) {
          continue;
        }
        const KSum residual = entry.sum.without_message(theta);
        auto it = locations.find(residual);
        if (it == locations.end() || it->second == db) {
          return fail("desired sum lacks matching side information");
        }
      }
    }
    if (theta == 1) {
      reference_shape = shapes;
    } else {
      // Theta-independence of the per-database (block, type, count) shape.
      for (uint32_t db = 0; db < num_databases; ++db) {
        if (shapes[db] != reference_shape[db]) {
          return fail("query shape depends on the desired index");
        }
      }
    }
  }
  result.passed = true;
  return result;
}

bool AuditReport::passed() const {
  if (!correctness.passed || !structure.passed || !cost.passed) {
    return false;
  }
  for (const auto& database : privacy) {
    if (database.verdict == PrivacyVerdict::kViolation) {
      return false;
    }
  }
  return true;
}

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json privacy_json = nlohmann::ordered_json::array();
  for (const auto& database : privacy) {
    nlohmann::ordered_json entry{
        {"database", database.database},
        {"verdict", privacy_verdict_name(database.verdict)},
    };
    if (database.min_p_value) {
      entry["min_p_value"] = *database.min_p_value;
    }
    if (database.witness) {
      entry["witness"] = {
          {"query_hex", database.witness->query_hex},
          {"theta_a", database.witness->theta_a},
          {"theta_b", database.witness->theta_b},
          {"count_a", database.witness->count_a},
          {"count_b", database.witness->count_b},
      };
    }
    privacy_json.push_back(std::move(entry));
  }

  nlohmann::ordered_json correctness_json{
      {"verdict", correctness.passed ? "pass" : "fail"},
      {"mode", correctness.exhaustive ? "exhaustive" : "sampled"},
      {"cases", correctness.cases},
  };
  if (correctness.counterexample) {
    correctness_json["counterexample"] = {
        {"theta", correctness.counterexample->theta},
        {"store", correctness.counterexample->store_index_or_seed},
        {"expected", correctness.counterexample->expected},
        {"decoded", correctness.counterexample->decoded},
    };
  }

  const char* control_name =
      options.control == NegativeControl::kNone ? "none"
      : options.control == NegativeControl::kIdentityPermutations
          ? "identity-permutations"
          : "zero-coins";
  return nlohmann::ordered_json{
      {"params", params_to_json(params)},
      {"options",
       {{"budget", options.budget},
        {"trials", options.trials},
        {"significance", options.significance},
        {"seed", options.seed},
        {"negative_control", control_name}}},
      {"mode", exhaustive ? "exhaustive" : "sampled"},
      {"privacy", std::move(privacy_json)},
      {"correctness", std::move(correctness_json)},
      {"structure",
       {{"verdict",
         structure.skipped ? "skipped" : (structure.passed ? "pass" : "fail")},
        {"detail", structure.failure}}},
      {"cost",
       {{"verdict", cost.passed ? "pass" : "fail"},
        {"measured", cost.measured},
        {"expected", cost.expected}}},
      {"passed", passed()},
  };
}

AuditReport full_audit(const SchemeParams& params,
                       const AuditOptions& options) {
  params.validate();
  AuditReport report;
  report.params = params;
  report.options = options;

  report.structure =
      structure_audit(params.num_databases, params.num_messages);

  try {
    report.correctness = correctness_audit_exhaustive(params, options.budget);
  } catch (const BudgetExceeded&) {
    report.correctness =
        correctness_audit_sampled(params, options.trials, options.seed);
  }

  report.exhaustive = true;
  for (uint32_t db = 1; db <= params.num_databases; ++db) {
    try {
      report.privacy.push_back(privacy_audit_exhaustive(
          params, db, options.budget, options.control));
    } catch (const BudgetExceeded&) {
      report.exhaustive = false;
      report.privacy.push_back(privacy_audit_sampled(
          params, db, options.trials,
          options.significance / params.num_databases, options.seed,
          options.control));
    }
  }

  const MessageStore store =
      MessageStore::random(params, derive_seed(options.seed, 0xc057));
  const Transcript transcript =
      run_protocol(params, 1, store, derive_seed(options.seed, 0x5eed));
  report.cost.measured = transcript.total_download;
  if (params.matched()) {
    report.cost.expected = optimal_download_cost(
        params.num_databases, params.num_messages, params.message_length);
  } else if (params.num_databases == 1) {
    report.cost.expected =
        static_cast<uint64_t>(params.num_messages) *
        transcript.transcoded_length;
  } else {
    report.cost.expected = mismatched_cost_bounds(params).achieved_cost;
  }
  report.cost.passed = report.cost.measured == report.cost.expected;
  return report;
}

}  // namespace pir
