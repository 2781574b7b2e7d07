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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "pir/core.h"

// The byte format exchanged with databases. Binary form is normative:
//
//   query  := "PIRQ" version:u8 kind:u8 alphabet:u32 entry_count:u32 entry*
//   entry  := term_count:u8 term*
//   term   := message_index:u32 position:u32        (0-based on the wire)
//   answer := symbol_count:u32 symbol*               (big-endian throughout)
//
// Each answer symbol takes the minimal whole number of bytes for the
// alphabet. A JSON mirror exists for debugging; it is not normative.

namespace pir {

enum class SchemeKind : uint8_t {
  kCapacity = 0,   // capacity-achieving plan entries
  kShort = 1,      // coefficient-vector queries of the short-message scheme
  kTrivial = 2,    // full download (single database)
  kComposite = 3,  // concatenation of independent segment queries
};

const char* scheme_kind_name(SchemeKind kind);

// One requested modulo sum. Terms are strictly increasing by
// (message_index, position); both are 1-based in memory, 0-based on the wire.
struct WireSum {
  std::vector<VirtualSymbol> terms;

  WireSum() = default;
  explicit WireSum(std::vector<VirtualSymbol> t);

  auto operator<=>(const WireSum&) const = default;
};

struct WireQuery {
  SchemeKind kind = SchemeKind::kCapacity;
  uint64_t alphabet = 0;
  std::vector<WireSum> sums;

  bool operator==(const WireQuery&) const = default;
};

struct AnswerString {
  std::vector<uint64_t> symbols;

  bool operator==(const AnswerString&) const = default;
};

// Raised when bytes or referenced indexes violate the protocol.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bytes per downloaded symbol for the given alphabet.
uint32_t symbol_width(uint64_t alphabet);

std::vector<uint8_t> serialize_query(const WireQuery& query);
WireQuery parse_query(std::span<const uint8_t> bytes);

std::vector<uint8_t> serialize_answer(const AnswerString& answer,
                                      uint64_t alphabet);
AnswerString parse_answer(std::span<const uint8_t> bytes, uint64_t alphabet);

// Debug mirrors (0-based indexes, like the wire).
nlohmann::ordered_json query_to_json(const WireQuery& query);
nlohmann::ordered_json answer_to_json(const AnswerString& answer);

std::string to_hex(std::span<const uint8_t> bytes);

}  // namespace pir
