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

#include "pir/pir.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "pir/alphabet.h"
#include "pir/audit.h"
#include "pir/composite.h"
#include "pir/core.h"
#include "pir/demo.h"
#include "pir/sim.h"

struct pir_store {
  pir::MessageStore store;
};

struct pir_transcript {
  pir::Transcript transcript;
};

struct pir_audit_report {
  pir::AuditReport report;
};

namespace {

thread_local std::string g_last_error;

pir::SchemeParams to_params(const pir_params* params) {
  if (params == nullptr) {
    throw std::invalid_argument("params is null");
  }
  pir::SchemeParams converted;
  converted.num_databases = params->databases;
  converted.num_messages = params->messages;
  converted.message_length = params->message_length;
  converted.message_alphabet = params->message_alphabet;
  converted.download_alphabet = params->download_alphabet == 0
                                    ? params->message_alphabet
                                    : params->download_alphabet;
  converted.validate();
  return converted;
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

template <typename Fn>
pir_status guarded(Fn&& fn) {
  try {
    fn();
    return PIR_OK;
  } catch (const pir::BudgetExceeded& error) {
    g_last_error = error.what();
    return PIR_ERROR_BUDGET_EXCEEDED;
  } catch (const pir::ProtocolError& error) {
    g_last_error = error.what();
    return PIR_ERROR_PROTOCOL;
  } catch (const std::invalid_argument& error) {
    g_last_error = error.what();
    return PIR_ERROR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& error) {
    g_last_error = error.what();
    return PIR_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& error) {
    g_last_error = error.what();
    return PIR_ERROR_INTERNAL;
  }
}

nlohmann::ordered_json cost_summary(const pir::SchemeParams& params) {
  nlohmann::ordered_json json;
  json["params"] = pir::params_to_json(params);
  const pir::Rational c =
      pir::capacity(params.num_databases, params.num_messages);
  json["capacity"] = {{"num", c.num.str()},
                      {"den", c.den.str()},
                      {"text", c.str()}};
  json["matched"] = params.matched();

  const uint64_t effective_length =
      params.matched()
          ? params.message_length
          : pir::transcoded_length(params.message_length,
                                   params.message_alphabet,
                                   params.download_alphabet);
  if (params.matched()) {
    json["optimal_download"] = pir::optimal_download_cost(
        params.num_databases, params.num_messages, params.message_length);
    json["attains_capacity"] = pir::attains_capacity(
        params.num_databases, params.num_messages, params.message_length);
  } else {
    json["transcoded_length"] = effective_length;
    if (params.num_databases >= 2) {
      const pir::TranscodedLength bounds =
          pir::mismatched_cost_bounds(params);
      json["download_window"] = {{"lower", bounds.lower_bound_cost},
                                 {"achieved", bounds.achieved_cost},
                                 {"exactly_optimal", bounds.exactly_optimal}};
    } else {
      json["achieved_download"] =
          static_cast<uint64_t>(params.num_messages) * effective_length;
    }
  }
  if (params.num_databases >= 2) {
    json["shortest_capacity_length"] = pir::shortest_capacity_length(
        params.num_databases, params.num_messages);
    pir::SchemeParams effective = params;
    effective.message_length = effective_length;
    effective.message_alphabet = params.download_alphabet;
    const pir::Decomposition d = pir::decompose(effective);
    nlohmann::ordered_json segments = nlohmann::ordered_json::array();
    for (const auto& segment : d.segments) {
      segments.push_back({{"kind", pir::scheme_kind_name(segment.kind)},
                          {"offset", segment.offset},
                          {"length", segment.length},
                          {"databases", segment.databases_used}});
    }
    json["decomposition"] = {{"capacity_groups", d.capacity_groups},
                             {"short_groups", d.short_groups},
                             {"residual", d.residual},
                             {"segments", std::move(segments)}};
  }
  return json;
}

}  // namespace

extern "C" {

const char* pir_version(void) { return "1.0.0"; }

const char* pir_status_name(pir_status status) {
  switch (status) {
    case PIR_OK:
      return "ok";
    case PIR_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case PIR_ERROR_BUDGET_EXCEEDED:
      return "budget exceeded";
    case PIR_ERROR_PROTOCOL:
      return "protocol error";
    case PIR_ERROR_IO:
      return "i/o error";
    case PIR_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* pir_last_error(void) { return g_last_error.c_str(); }

void pir_string_free(char* text) { std::free(text); }

pir_status pir_cost_summary_json(const pir_params* params, char** out_json) {
  return guarded([&] {
    if (out_json == nullptr) {
      throw std::invalid_argument("out_json is null");
    }
    *out_json = copy_string(cost_summary(to_params(params)).dump(2));
  });
}

pir_status pir_demo_table(const pir_params* params, uint32_t theta,
                          char** out_text) {
  return guarded([&] {
    if (out_text == nullptr) {
      throw std::invalid_argument("out_text is null");
    }
    if (params == nullptr) {
      throw std::invalid_argument("params is null");
    }
    *out_text = copy_string(
        pir::demo_plan_table(params->databases, params->messages, theta));
  });
}

pir_status pir_store_random(const pir_params* params, uint64_t seed,
                            pir_store** out_store) {
  return guarded([&] {
    if (out_store == nullptr) {
      throw std::invalid_argument("out_store is null");
    }
    *out_store =
        new pir_store{pir::MessageStore::random(to_params(params), seed)};
  });
}

pir_status pir_store_from_json(const char* json_text, pir_store** out_store) {
  return guarded([&] {
    if (json_text == nullptr || out_store == nullptr) {
      throw std::invalid_argument("null argument");
    }
    const nlohmann::json parsed = nlohmann::json::parse(json_text);
    *out_store = new pir_store{pir::store_from_json(parsed)};
  });
}

pir_status pir_store_to_json(const pir_store* store, char** out_json) {
  return guarded([&] {
    if (store == nullptr || out_json == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_json = copy_string(pir::store_to_json(store->store).dump(2));
  });
}

pir_status pir_store_symbol(const pir_store* store, uint32_t message,
                            uint64_t position, uint64_t* out_symbol) {
  return guarded([&] {
    if (store == nullptr || out_symbol == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_symbol = store->store.symbol(message, position);
  });
}

void pir_store_free(pir_store* store) { delete store; }

pir_status pir_run(const pir_params* params, uint32_t theta,
                   const pir_store* store, uint64_t seed,
                   pir_transcript** out_transcript) {
  return guarded([&] {
    if (store == nullptr || out_transcript == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_transcript = new pir_transcript{
        pir::run_protocol(to_params(params), theta, store->store, seed)};
  });
}

pir_status pir_transcript_json(const pir_transcript* transcript,
                               char** out_json) {
  return guarded([&] {
    if (transcript == nullptr || out_json == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_json = copy_string(transcript->transcript.to_json().dump(2));
  });
}

pir_status pir_transcript_total_download(const pir_transcript* transcript,
                                         uint64_t* out_total) {
  return guarded([&] {
    if (transcript == nullptr || out_total == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_total = transcript->transcript.total_download;
  });
}

pir_status pir_transcript_decoded(const pir_transcript* transcript,
                                  uint64_t* buffer, uint64_t buffer_length) {
  return guarded([&] {
    if (transcript == nullptr || buffer == nullptr) {
      throw std::invalid_argument("null argument");
    }
    const pir::Message& decoded = transcript->transcript.decoded;
    if (buffer_length < decoded.size()) {
      throw std::invalid_argument("buffer too small for the decoded message");
    }
    std::memcpy(buffer, decoded.data(), decoded.size() * sizeof(uint64_t));
  });
}

void pir_transcript_free(pir_transcript* transcript) { delete transcript; }

pir_status pir_audit_run(const pir_params* params,
                         const pir_audit_options* options,
                         pir_audit_report** out_report) {
  return guarded([&] {
    if (out_report == nullptr) {
      throw std::invalid_argument("out_report is null");
    }
    pir::AuditOptions converted;
    if (options != nullptr) {
      if (options->budget != 0) {
        converted.budget = options->budget;
      }
      if (options->trials != 0) {
        converted.trials = options->trials;
      }
      if (options->significance != 0) {
        converted.significance = options->significance;
      }
      converted.seed = options->seed;
      switch (options->control) {
        case PIR_CONTROL_NONE:
          converted.control = pir::NegativeControl::kNone;
          break;
        case PIR_CONTROL_IDENTITY_PERMUTATIONS:
          converted.control = pir::NegativeControl::kIdentityPermutations;
          break;
        case PIR_CONTROL_ZERO_COINS:
          converted.control = pir::NegativeControl::kZeroCoins;
          break;
        default:
          throw std::invalid_argument("unknown negative control");
      }
    }
    *out_report =
        new pir_audit_report{pir::full_audit(to_params(params), converted)};
  });
}

int pir_audit_passed(const pir_audit_report* report) {
  return report != nullptr && report->report.passed() ? 1 : 0;
}

pir_status pir_audit_json(const pir_audit_report* report, char** out_json) {
  return guarded([&] {
    if (report == nullptr || out_json == nullptr) {
      throw std::invalid_argument("null argument");
    }
    *out_json = copy_string(report->report.to_json().dump(2));
  });
}

void pir_audit_report_free(pir_audit_report* report) { delete report; }

}  // extern "C"
