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

// Command-line front end over the C API: cost tables, protocol runs,
// audits and the symbolic demo tables.
//
// Exit codes: 0 success, 1 audit violation, 2 validation error, 3 I/O error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pir/pir.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

constexpr uint64_t kDefaultSeed = 1729;

struct StringDeleter {
  void operator()(char* text) const { pir_string_free(text); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

int fail(pir_status status) {
  std::cerr << "error: " << pir_status_name(status) << ": " << pir_last_error()
            << "\n";
  switch (status) {
    case PIR_ERROR_IO:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return true;
  }
  std::ofstream out(path);
  out << text << "\n";
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

std::string capacity_text(const nlohmann::json& summary) {
  std::ostringstream out;
  const double approx =
      std::stod(summary["capacity"]["num"].get<std::string>()) /
      std::stod(summary["capacity"]["den"].get<std::string>());
  out << summary["capacity"]["text"].get<std::string>() << " (~" << approx
      << ")";
  return out.str();
}

std::string decomposition_text(const nlohmann::json& summary) {
  if (!summary.contains("decomposition")) {
    return "trivial full download";
  }
  const auto& d = summary["decomposition"];
  std::ostringstream out;
  out << d["capacity_groups"].get<uint64_t>() << " capacity group(s) + "
      << d["short_groups"].get<uint64_t>() << " short group(s) + residual "
      << d["residual"].get<uint64_t>();
  return out.str();
}

int run_cost(const pir_params& params, const std::string& format,
             const std::string& output) {
  char* raw = nullptr;
  const pir_status status = pir_cost_summary_json(&params, &raw);
  if (status != PIR_OK) {
    return fail(status);
  }
  OwnedString text(raw);
  const auto summary = nlohmann::ordered_json::parse(text.get());
  if (format == "json") {
    return write_output(output, summary.dump(2)) ? kExitOk : kExitIo;
  }
  std::ostringstream out;
  out << "databases (N)        : " << params.databases << "\n"
      << "messages (K)         : " << params.messages << "\n"
      << "message length (L)   : " << params.message_length << "\n"
      << "message alphabet (M) : " << params.message_alphabet << "\n"
      << "download alphabet    : " << params.download_alphabet << "\n"
      << "capacity C           : " << capacity_text(summary) << "\n";
  if (summary["matched"].get<bool>()) {
    out << "optimal download D   : " << summary["optimal_download"]
        << " symbols\n"
        << "attains capacity     : "
        << (summary["attains_capacity"].get<bool>() ? "yes" : "no") << "\n";
  } else {
    out << "transcoded length L' : " << summary["transcoded_length"] << "\n";
    if (summary.contains("download_window")) {
      const auto& window = summary["download_window"];
      out << "download window      : [" << window["lower"] << ", "
          << window["achieved"] << "] M'-ary symbols\n"
          << "exactly optimal      : "
          << (window["exactly_optimal"].get<bool>() ? "yes" : "no") << "\n";
    } else {
      out << "achieved download    : " << summary["achieved_download"]
          << " M'-ary symbols\n";
    }
  }
  if (summary.contains("shortest_capacity_length")) {
    out << "shortest capacity L  : " << summary["shortest_capacity_length"]
        << "\n";
  }
  out << "decomposition        : " << decomposition_text(summary);
  return write_output(output, out.str()) ? kExitOk : kExitIo;
}

int run_run(const pir_params& params, uint32_t theta, uint64_t seed,
            const std::string& store_path, const std::string& output) {
  pir_store* store = nullptr;
  pir_status status = PIR_OK;
  if (store_path.empty()) {
    status = pir_store_random(&params, seed, &store);
  } else {
    std::ifstream in(store_path);
    if (!in) {
      std::cerr << "error: cannot read " << store_path << "\n";
      return kExitIo;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    status = pir_store_from_json(buffer.str().c_str(), &store);
  }
  if (status != PIR_OK) {
    return fail(status);
  }

  pir_transcript* transcript = nullptr;
  status = pir_run(&params, theta, store, seed, &transcript);
  pir_store_free(store);
  if (status != PIR_OK) {
    return fail(status);
  }
  char* raw = nullptr;
  status = pir_transcript_json(transcript, &raw);
  pir_transcript_free(transcript);
  if (status != PIR_OK) {
    return fail(status);
  }
  OwnedString text(raw);
  const auto json = nlohmann::ordered_json::parse(text.get());
  if (!write_output(output, json.dump(2))) {
    return kExitIo;
  }
  std::cerr << "total download: " << json["total_download"]
            << " symbols, optimality: "
            << json["optimality"].get<std::string>() << "\n";
  return kExitOk;
}

int run_audit(const pir_params& params, const pir_audit_options& options,
              const std::string& output) {
  pir_audit_report* report = nullptr;
  const pir_status status = pir_audit_run(&params, &options, &report);
  if (status != PIR_OK) {
    return fail(status);
  }
  char* raw = nullptr;
  if (pir_audit_json(report, &raw) != PIR_OK) {
    pir_audit_report_free(report);
    return fail(PIR_ERROR_INTERNAL);
  }
  OwnedString text(raw);
  const bool passed = pir_audit_passed(report) == 1;
  pir_audit_report_free(report);
  if (!write_output(output, text.get())) {
    return kExitIo;
  }
  std::cerr << (passed ? "audit: PASS" : "audit: VIOLATION") << "\n";
  return passed ? kExitOk : kExitViolation;
}

int run_demo(const pir_params& params, uint32_t theta) {
  const uint32_t first = theta == 0 ? 1 : theta;
  const uint32_t last = theta == 0 ? params.messages : theta;
  for (uint32_t t = first; t <= last; ++t) {
    char* raw = nullptr;
    const pir_status status = pir_demo_table(&params, t, &raw);
    if (status != PIR_OK) {
      return fail(status);
    }
    OwnedString text(raw);
    std::cout << text.get() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pirsim: download-optimal private information retrieval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pir_version());

  pir_params params{};
  params.message_alphabet = 2;
  params.download_alphabet = 0;  // defaults to M

  uint32_t theta = 1;
  uint64_t seed = kDefaultSeed;
  std::string output;
  std::string format = "table";
  std::string store_path;

  auto add_params = [&](CLI::App* cmd, bool with_length) {
    cmd->add_option("-N,--databases", params.databases, "databases")
        ->required();
    cmd->add_option("-K,--messages", params.messages, "messages")->required();
    if (with_length) {
      cmd->add_option("-L,--length", params.message_length,
                      "message length in symbols")
          ->required();
    }
    cmd->add_option("-M,--alphabet", params.message_alphabet,
                    "message alphabet size (default 2)");
    cmd->add_option("--mprime", params.download_alphabet,
                    "download alphabet size (default: same as -M)");
  };

  CLI::App* cost = app.add_subcommand(
      "cost", "capacity, optimal download cost and decomposition");
  add_params(cost, true);
  cost->add_option("-f,--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  cost->add_option("-o,--output", output, "write to file instead of stdout");

  CLI::App* run = app.add_subcommand("run", "execute one protocol run");
  add_params(run, true);
  run->add_option("-t,--theta", theta, "desired message index (1-based)")
      ->required();
  run->add_option("-s,--seed", seed, "randomness seed (default 1729)");
  run->add_option("--store", store_path,
                  "message store JSON file (default: generated from seed)");
  run->add_option("-o,--output", output, "transcript file (default stdout)");

  pir_audit_options audit_options{};
  audit_options.seed = kDefaultSeed;
  std::string control = "none";
  CLI::App* audit = app.add_subcommand(
      "audit", "verify correctness, privacy and download cost");
  add_params(audit, true);
  if (const char* env = std::getenv("PIR_AUDIT_BUDGET")) {
    audit_options.budget = std::strtoull(env, nullptr, 10);
  }
  audit->add_option("--budget", audit_options.budget,
                    "exhaustive enumeration cap (default 1e6; "
                    "env PIR_AUDIT_BUDGET)");
  audit->add_option("--trials", audit_options.trials,
                    "sampled-mode trials per index (default 1e4)");
  audit->add_option("--significance", audit_options.significance,
                    "sampled-mode significance level (default 1e-3)");
  audit->add_option("-s,--seed", audit_options.seed, "sampling seed");
  audit->add_option("--negative-control", control,
                    "none, identity-permutations or zero-coins")
      ->check(CLI::IsMember({"none", "identity-permutations", "zero-coins"}));
  audit->add_option("-o,--output", output, "report file (default stdout)");

  CLI::App* demo = app.add_subcommand(
      "demo", "symbolic query tables of the capacity-achieving plan");
  add_params(demo, false);
  demo->add_option("-t,--theta", theta,
                   "desired index (default: all indexes)");

  theta = 0;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (control == "identity-permutations") {
    audit_options.control = PIR_CONTROL_IDENTITY_PERMUTATIONS;
  } else if (control == "zero-coins") {
    audit_options.control = PIR_CONTROL_ZERO_COINS;
  }
  if (params.download_alphabet == 0) {
    params.download_alphabet = params.message_alphabet;
  }

  if (cost->parsed()) {
    return run_cost(params, format, output);
  }
  if (run->parsed()) {
    return run_run(params, theta == 0 ? 1 : theta, seed, store_path, output);
  }
  if (audit->parsed()) {
    return run_audit(params, audit_options, output);
  }
  if (demo->parsed()) {
    params.message_length = 1;
    return run_demo(params, theta);
  }
  return kExitValidation;
}
