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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pir/composite.h"
#include "pir/core.h"

// Verifies the three protocol guarantees at desk scale: the decoded message
// equals the stored one, each database's query distribution is identical
// for every desired index, and the measured download matches the closed
// form. Small randomness spaces are enumerated exhaustively (exact multiset
// equality, zero tolerance); larger ones fall back to seeded sampling with
// a chi-square comparison.

namespace pir {

enum class PrivacyVerdict : uint8_t {
  kExactEqual,
  kStatisticallyConsistent,
  kViolation,
};

const char* privacy_verdict_name(PrivacyVerdict verdict);

// Exact occurrence counts of serialized queries over an enumerated (or
// sampled) randomness space.
struct QueryDistribution {
  std::map<std::string, uint64_t> support;  // key: serialized wire bytes
  uint64_t total_outcomes = 0;
};

struct PrivacyWitness {
  std::string query_hex;
  uint32_t theta_a = 0;
  uint32_t theta_b = 0;
  uint64_t count_a = 0;
  uint64_t count_b = 0;
};

struct DatabasePrivacyResult {
  uint32_t database = 0;  // 1-based
  PrivacyVerdict verdict = PrivacyVerdict::kViolation;
  std::optional<PrivacyWitness> witness;
  std::optional<double> min_p_value;  // sampled mode only
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds the exact query distribution of database `db` (1-based) for the
// given desired index by enumerating the whole randomness space.
QueryDistribution enumerate_query_distribution(
    const SchemeParams& params, uint32_t theta, uint32_t db, uint64_t budget,
    NegativeControl control = NegativeControl::kNone);

// Exact multiset comparison across all theta. Throws BudgetExceeded when
// the randomness space is larger than `budget`.
DatabasePrivacyResult privacy_audit_exhaustive(
    const SchemeParams& params, uint32_t db, uint64_t budget,
    NegativeControl control = NegativeControl::kNone);

// Chi-square two-sample comparison over observed query values for every
// pair of desired indexes, Bonferroni-corrected within the database.
DatabasePrivacyResult privacy_audit_sampled(
    const SchemeParams& params, uint32_t db, uint64_t trials,
    double significance, uint64_t seed,
    NegativeControl control = NegativeControl::kNone);

struct CorrectnessCounterexample {
  uint32_t theta = 0;
  uint64_t store_index_or_seed = 0;
  Message expected;
  Message decoded;
};

struct CorrectnessResult {
  bool passed = false;
  bool exhaustive = false;
  uint64_t cases = 0;
  std::optional<CorrectnessCounterexample> counterexample;
};

// Exhaustive when (stores x theta x randomness) fits the budget.
CorrectnessResult correctness_audit_exhaustive(const SchemeParams& params,
                                               uint64_t budget);
CorrectnessResult correctness_audit_sampled(const SchemeParams& params,
                                            uint64_t trials, uint64_t seed);

struct StructureResult {
  bool passed = false;
  bool skipped = false;  // N = 1 has no plan structure to check
  std::string failure;
};

// Checks the generated plans at L = N^(K-1) for every theta: block purity,
// per-type counts against the count profile, no symbol reuse, per-message
// symbol budget, desired coverage, peelability of every desired sum, and
// theta-independence of the (block, type, count) shape.
StructureResult structure_audit(uint32_t num_databases, uint32_t num_messages);

struct CostResult {
  bool passed = false;
  uint64_t measured = 0;
  uint64_t expected = 0;
};

struct AuditOptions {
  uint64_t budget = 1000000;   // exhaustive-enumeration cap
  uint64_t trials = 10000;     // sampled-mode trials per theta
  double significance = 1e-3;  // sampled-mode level, Bonferroni-adjusted
  uint64_t seed = 1729;
  NegativeControl control = NegativeControl::kNone;
};

struct AuditReport {
  SchemeParams params;
  AuditOptions options;
  bool exhaustive = false;  // privacy mode actually used
  std::vector<DatabasePrivacyResult> privacy;
  CorrectnessResult correctness;
  StructureResult structure;
  CostResult cost;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

// Runs structure, correctness, privacy and cost audits, exhaustively where
// the budget allows and sampled otherwise.
AuditReport full_audit(const SchemeParams& params, const AuditOptions& options);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

}  // namespace pir
