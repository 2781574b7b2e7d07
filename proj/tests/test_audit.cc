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

#include <cmath>

#include "doctest.h"

using namespace pir;

TEST_CASE("exhaustive privacy holds for the capacity scheme") {
  SUBCASE("N=2 K=2 over the 4 permutation tuples") {
    for (uint32_t db = 1; db <= 2; ++db) {
      const auto result =
          privacy_audit_exhaustive({2, 2, 2, 2, 2}, db, 1000);
      CHECK(result.verdict == PrivacyVerdict::kExactEqual);
    }
  }
  SUBCASE("distributions count every outcome") {
    const QueryDistribution distribution =
        enumerate_query_distribution({2, 2, 2, 2, 2}, 1, 2, 1000);
    CHECK(distribution.total_outcomes == 4);
    uint64_t total = 0;
    for (const auto& [_, count] : distribution.support) {
      total += count;
    }
    CHECK(total == 4);
    // Database 2 sees one two-term sum; all four (position, position)
    // combinations are equally likely.
    CHECK(distribution.support.size() == 4);
  }
  SUBCASE("budget overruns raise") {
    CHECK_THROWS_AS(privacy_audit_exhaustive({3, 3, 9, 2, 2}, 1, 1000),
                    BudgetExceeded);
  }
}

TEST_CASE("exhaustive privacy holds for short-scheme instances") {
  // L = N-1 with K >= 2 decomposes into a single short segment.
  for (uint32_t n = 2; n <= 4; ++n) {
    for (uint32_t k = 2; k <= 3; ++k) {
      const SchemeParams params{n, k, n - 1, 2, 2};
      for (uint32_t db = 1; db <= n; ++db) {
        const auto result = privacy_audit_exhaustive(params, db, 1 << 20);
        CHECK(result.verdict == PrivacyVerdict::kExactEqual);
      }
    }
  }
}

TEST_CASE("exhaustive privacy over a chunked space") {
  // 2^15 coin vectors: large enough to split across worker threads.
  const SchemeParams params{4, 5, 3, 2, 2};
  const QueryDistribution distribution =
      enumerate_query_distribution(params, 2, 3, 40000);
  CHECK(distribution.total_outcomes == 32768);
  uint64_t total = 0;
  for (const auto& [_, count] : distribution.support) {
    total += count;
  }
  CHECK(total == 32768);
  const auto result = privacy_audit_exhaustive(params, 3, 40000);
  CHECK(result.verdict == PrivacyVerdict::kExactEqual);
}

TEST_CASE("exhaustive privacy holds for the composite scheme") {
  const SchemeParams params{2, 2, 3, 2, 2};
  for (uint32_t db = 1; db <= 2; ++db) {
    const auto result = privacy_audit_exhaustive(params, db, 1000);
    CHECK(result.verdict == PrivacyVerdict::kExactEqual);
  }
}

TEST_CASE("negative controls must fail") {
  SUBCASE("identity permutations leak through database 2") {
    const auto result = privacy_audit_exhaustive(
        {2, 2, 2, 2, 2}, 2, 1000, NegativeControl::kIdentityPermutations);
    REQUIRE(result.verdict == PrivacyVerdict::kViolation);
    REQUIRE(result.witness.has_value());
    CHECK(result.witness->count_a != result.witness->count_b);
  }
  SUBCASE("zero coins leak through every flipped database") {
    const SchemeParams params{3, 2, 2, 2, 2};
    const auto result = privacy_audit_exhaustive(
        params, 2, 1000, NegativeControl::kZeroCoins);
    REQUIRE(result.verdict == PrivacyVerdict::kViolation);
    CHECK(result.witness.has_value());
  }
  SUBCASE("database 1 of the zero-coin control stays clean") {
    // Query 1 is the coin vector itself; forcing zeros makes it constant
    // but still theta-independent.
    const auto result = privacy_audit_exhaustive(
        {3, 2, 2, 2, 2}, 1, 1000, NegativeControl::kZeroCoins);
    CHECK(result.verdict == PrivacyVerdict::kExactEqual);
  }
}

TEST_CASE("sampled privacy") {
  SUBCASE("consistent for the correct scheme") {
    const auto result =
        privacy_audit_sampled({2, 2, 2, 2, 2}, 2, 2000, 1e-3, 99);
    CHECK(result.verdict == PrivacyVerdict::kStatisticallyConsistent);
    REQUIRE(result.min_p_value.has_value());
    CHECK(*result.min_p_value > 1e-3);
  }
  SUBCASE("violation for the identity-permutation control") {
    const auto result = privacy_audit_sampled(
        {2, 2, 2, 2, 2}, 2, 500, 1e-3, 99,
        NegativeControl::kIdentityPermutations);
    REQUIRE(result.verdict == PrivacyVerdict::kViolation);
    CHECK(result.witness.has_value());
  }
  SUBCASE("violation for the zero-coin control") {
    const auto result = privacy_audit_sampled(
        {3, 2, 2, 2, 2}, 3, 500, 1e-3, 99, NegativeControl::kZeroCoins);
    CHECK(result.verdict == PrivacyVerdict::kViolation);
  }
  SUBCASE("diffuse supports carry no false alarms") {
    const auto result =
        privacy_audit_sampled({3, 3, 9, 2, 2}, 1, 300, 1e-3, 7);
    CHECK(result.verdict == PrivacyVerdict::kStatisticallyConsistent);
  }
}

TEST_CASE("correctness audits") {
  SUBCASE("exhaustive at N=2 K=2 L=2 M=2") {
    const auto result = correctness_audit_exhaustive({2, 2, 2, 2, 2}, 1000);
    CHECK(result.passed);
    CHECK(result.exhaustive);
    // 16 stores x 2 theta x 4 permutation tuples.
    CHECK(result.cases == 128);
  }
  SUBCASE("exhaustive short-scheme sweep at N=3 K=2 L=2 M=2") {
    // 16 stores x 2 theta x 16 coin vectors.
    const auto result = correctness_audit_exhaustive({3, 2, 2, 2, 2}, 1000);
    CHECK(result.passed);
    CHECK(result.exhaustive);
    CHECK(result.cases == 512);
  }
  SUBCASE("sampled on a larger instance") {
    const auto result = correctness_audit_sampled({3, 3, 16, 256, 256}, 50, 3);
    CHECK(result.passed);
    CHECK(result.cases == 50);
  }
  SUBCASE("budget overruns raise") {
    CHECK_THROWS_AS(correctness_audit_exhaustive({3, 3, 9, 256, 256}, 1000),
                    BudgetExceeded);
  }
}

TEST_CASE("structure audit") {
  SUBCASE("grid") {
    for (uint32_t n = 2; n <= 4; ++n) {
      for (uint32_t k = 1; k <= 4; ++k) {
        const StructureResult result = structure_audit(n, k);
        CHECK(result.passed);
        CHECK_FALSE(result.skipped);
        CHECK(result.failure.empty());
      }
    }
  }
  SUBCASE("skipped for N=1") {
    const StructureResult result = structure_audit(1, 3);
    CHECK(result.passed);
    CHECK(result.skipped);
  }
}

TEST_CASE("chi-square survival function sanity") {
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_sf(13.277, 4) == doctest::Approx(0.01).epsilon(0.01));
  CHECK(chi_square_sf(0.0, 3) == 1.0);
  CHECK(chi_square_sf(100.0, 1) < 1e-20);
}

TEST_CASE("full audit reports") {
  SUBCASE("clean instance passes and is exhaustive") {
    AuditOptions options;
    options.budget = 100000;
    const AuditReport report = full_audit({2, 2, 3, 2, 2}, options);
    CHECK(report.passed());
    CHECK(report.exhaustive);
    CHECK(report.correctness.exhaustive);
    CHECK(report.cost.measured == 5);
    const auto json = report.to_json();
    CHECK(json["passed"] == true);
    CHECK(json["privacy"][0]["verdict"] == "EXACT_EQUAL");
    CHECK(json["mode"] == "exhaustive");
  }
  SUBCASE("negative control fails with a witness") {
    AuditOptions options;
    options.budget = 100000;
    options.control = NegativeControl::kIdentityPermutations;
    const AuditReport report = full_audit({2, 2, 2, 2, 2}, options);
    CHECK_FALSE(report.passed());
    bool witnessed = false;
    for (const auto& database : report.privacy) {
      if (database.verdict == PrivacyVerdict::kViolation) {
        witnessed = database.witness.has_value();
      }
    }
    CHECK(witnessed);
  }
  SUBCASE("sampled fallback engages above the budget") {
    AuditOptions options;
    options.budget = 100;
    options.trials = 400;
    const AuditReport report = full_audit({2, 3, 4, 2, 2}, options);
    CHECK_FALSE(report.exhaustive);
    CHECK(report.passed());
    const auto json = report.to_json();
    CHECK(json["mode"] == "sampled");
  }
  SUBCASE("mismatched instance audits against the achieved bound") {
    AuditOptions options;
    options.budget = 100000;
    const AuditReport report = full_audit({2, 2, 3, 9, 3}, options);
    CHECK(report.passed());
    CHECK(report.cost.measured == 9);
    CHECK(report.cost.expected == 9);
  }
}
