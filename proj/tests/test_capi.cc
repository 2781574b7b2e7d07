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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"
#include "pir/pir.h"

namespace {

std::string take_string(char* text) {
  REQUIRE(text != nullptr);
  std::string copy = text;
  pir_string_free(text);
  return copy;
}

}  // namespace

TEST_CASE("cost summary json") {
  const pir_params params{3, 3, 16, 2, 2};
  char* text = nullptr;
  REQUIRE(pir_cost_summary_json(&params, &text) == PIR_OK);
  const auto json = nlohmann::json::parse(take_string(text));
  CHECK(json["capacity"]["text"] == "9/13");
  CHECK(json["optimal_download"] == 24);
  CHECK(json["attains_capacity"] == false);
  CHECK(json["decomposition"]["capacity_groups"] == 1);
  CHECK(json["decomposition"]["short_groups"] == 3);
  CHECK(json["decomposition"]["residual"] == 1);
}

TEST_CASE("cost summary for mismatched alphabets") {
  const pir_params params{2, 2, 3, 9, 3};
  char* text = nullptr;
  REQUIRE(pir_cost_summary_json(&params, &text) == PIR_OK);
  const auto json = nlohmann::json::parse(take_string(text));
  CHECK(json["matched"] == false);
  CHECK(json["transcoded_length"] == 6);
  CHECK(json["download_window"]["lower"] == 9);
  CHECK(json["download_window"]["achieved"] == 9);
  CHECK(json["download_window"]["exactly_optimal"] == true);
}

TEST_CASE("invalid parameters surface as status codes") {
  const pir_params params{0, 2, 2, 2, 2};
  char* text = nullptr;
  CHECK(pir_cost_summary_json(&params, &text) == PIR_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(pir_last_error()).find("database") != std::string::npos);
  CHECK(pir_cost_summary_json(nullptr, &text) == PIR_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("store round trip and symbol access") {
  const pir_params params{2, 2, 4, 5, 5};
  pir_store* store = nullptr;
  REQUIRE(pir_store_random(&params, 11, &store) == PIR_OK);
  char* text = nullptr;
  REQUIRE(pir_store_to_json(store, &text) == PIR_OK);
  const std::string json = take_string(text);

  pir_store* reloaded = nullptr;
  REQUIRE(pir_store_from_json(json.c_str(), &reloaded) == PIR_OK);
  uint64_t a = 0;
  uint64_t b = 0;
  REQUIRE(pir_store_symbol(store, 2, 3, &a) == PIR_OK);
  REQUIRE(pir_store_symbol(reloaded, 2, 3, &b) == PIR_OK);
  CHECK(a == b);
  CHECK(pir_store_symbol(store, 3, 1, &a) == PIR_ERROR_INVALID_ARGUMENT);
  pir_store_free(store);
  pir_store_free(reloaded);
}

TEST_CASE("protocol run through the C surface") {
  const pir_params params{2, 2, 2, 2, 2};
  pir_store* store = nullptr;
  REQUIRE(pir_store_random(&params, 7, &store) == PIR_OK);
  pir_transcript* transcript = nullptr;
  REQUIRE(pir_run(&params, 1, store, 13, &transcript) == PIR_OK);

  uint64_t total = 0;
  REQUIRE(pir_transcript_total_download(transcript, &total) == PIR_OK);
  CHECK(total == 3);

  std::vector<uint64_t> decoded(2);
  REQUIRE(pir_transcript_decoded(transcript, decoded.data(), decoded.size()) ==
          PIR_OK);
  uint64_t expected = 0;
  for (uint64_t position = 1; position <= 2; ++position) {
    REQUIRE(pir_store_symbol(store, 1, position, &expected) == PIR_OK);
    CHECK(decoded[position - 1] == expected);
  }

  char* text = nullptr;
  REQUIRE(pir_transcript_json(transcript, &text) == PIR_OK);
  const auto json = nlohmann::json::parse(take_string(text));
  CHECK(json["total_download"] == 3);
  CHECK(json["optimality"] == "optimal");

  CHECK(pir_run(&params, 5, store, 13, &transcript) ==
        PIR_ERROR_INVALID_ARGUMENT);
  pir_transcript_free(transcript);
  pir_store_free(store);
}

TEST_CASE("audits through the C surface") {
  const pir_params params{2, 2, 3, 2, 2};
  pir_audit_options options{};
  options.budget = 100000;
  options.trials = 500;
  options.seed = 3;

  pir_audit_report* report = nullptr;
  REQUIRE(pir_audit_run(&params, &options, &report) == PIR_OK);
  CHECK(pir_audit_passed(report) == 1);
  char* text = nullptr;
  REQUIRE(pir_audit_json(report, &text) == PIR_OK);
  const auto json = nlohmann::json::parse(take_string(text));
  CHECK(json["passed"] == true);
  CHECK(json["mode"] == "exhaustive");
  pir_audit_report_free(report);

  options.control = PIR_CONTROL_IDENTITY_PERMUTATIONS;
  const pir_params control_params{2, 2, 2, 2, 2};
  REQUIRE(pir_audit_run(&control_params, &options, &report) == PIR_OK);
  CHECK(pir_audit_passed(report) == 0);
  pir_audit_report_free(report);
}

TEST_CASE("demo table labels the worked example") {
  const pir_params params{2, 2, 2, 2, 2};
  char* text = nullptr;
  REQUIRE(pir_demo_table(&params, 1, &text) == PIR_OK);
  const std::string table = take_string(text);
  CHECK(table.find("a1") != std::string::npos);
  CHECK(table.find("a2+b1") != std::string::npos);
}
