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

#include "pir/wire.h"

#include <algorithm>

namespace pir {

namespace {

constexpr char kMagic[4] = {'P', 'I', 'R', 'Q'};
constexpr uint8_t kVersion = 1;
constexpr uint64_t kMaxU32 = 0xffffffffULL;

void put_u32(std::vector<uint8_t>& out, uint64_t value) {
  out.push_back(static_cast<uint8_t>(value >> 24));
  out.push_back(static_cast<uint8_t>(value >> 16));
  out.push_back(static_cast<uint8_t>(value >> 8));
  out.push_back(static_cast<uint8_t>(value));
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint8_t u8() {
    require(1);
    return bytes_[pos_++];
  }

  uint32_t u32() {
    require(4);
    uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      value = (value << 8) | bytes_[pos_++];
    }
    return value;
  }

  uint64_t unsigned_be(uint32_t width) {
    require(width);
    uint64_t value = 0;
    for (uint32_t i = 0; i < width; ++i) {
      value = (value << 8) | bytes_[pos_++];
    }
    return value;
  }

  void expect_end() const {
    if (pos_ != bytes_.size()) {
      throw ProtocolError("wire: trailing bytes");
    }
  }

 private:
  void require(size_t count) const {
    if (pos_ + count > bytes_.size()) {
      throw ProtocolError("wire: truncated input");
    }
  }

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace

const char* scheme_kind_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kCapacity:
      return "capacity";
    case SchemeKind::kShort:
      return "short";
    case SchemeKind::kTrivial:
      return "trivial";
    case SchemeKind::kComposite:
      return "composite";
  }
  return "unknown";
}

WireSum::WireSum(std::vector<VirtualSymbol> t) : terms(std::move(t)) {
  std::sort(terms.begin(), terms.end());
  for (size_t i = 1; i < terms.size(); ++i) {
    if (terms[i] == terms[i - 1]) {
      throw ProtocolError("wire: repeated term in sum");
    }
  }
}

uint32_t symbol_width(uint64_t alphabet) {
  if (alphabet < 2 || alphabet > kMaxU32 + 1) {
    throw ProtocolError("wire: unsupported alphabet");
  }
  uint32_t width = 1;
  uint64_t limit = 256;
  while (alphabet - 1 >= limit) {
    limit <<= 8;
    ++width;
  }
  return width;
}

std::vector<uint8_t> serialize_query(const WireQuery& query) {
  if (query.alphabet < 2 || query.alphabet > kMaxU32) {
    throw ProtocolError("wire: alphabet out of range");
  }
  if (query.sums.size() > kMaxU32) {
    throw ProtocolError("wire: too many entries");
  }
  std::vector<uint8_t> out;
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(query.kind));
  put_u32(out, query.alphabet);
  put_u32(out, query.sums.size());
  for (const auto& sum : query.sums) {
    if (sum.terms.size() > 255) {
      throw ProtocolError("wire: sum has more than 255 terms");
    }
    out.push_back(static_cast<uint8_t>(sum.terms.size()));
    for (const auto& term : sum.terms) {
      if (term.message_index < 1 || term.message_index > kMaxU32 + 1 ||
          term.position < 1 || term.position > kMaxU32 + 1) {
        throw ProtocolError("wire: term index out of range");
      }
      put_u32(out, term.message_index - 1);
      put_u32(out, term.position - 1);
    }
  }
  return out;
}

WireQuery parse_query(std::span<const uint8_t> bytes) {
  Reader reader(bytes);
  for (char expected : kMagic) {
    if (reader.u8() != static_cast<uint8_t>(expected)) {
      throw ProtocolError("wire: bad magic");
    }
  }
  if (reader.u8() != kVersion) {
    throw ProtocolError("wire: unsupported version");
  }
  const uint8_t kind = reader.u8();
  if (kind > static_cast<uint8_t>(SchemeKind::kComposite)) {
    throw ProtocolError("wire: unknown scheme kind");
  }
  WireQuery query;
  query.kind = static_cast<SchemeKind>(kind);
  query.alphabet = reader.u32();
  if (query.alphabet < 2) {
    throw ProtocolError("wire: alphabet out of range");
  }
  const uint32_t entry_count = reader.u32();
  query.sums.reserve(entry_count);
  for (uint32_t i = 0; i < entry_count; ++i) {
    const uint8_t term_count = reader.u8();
    std::vector<VirtualSymbol> terms;
    terms.reserve(term_count);
    for (uint8_t t = 0; t < term_count; ++t) {
      const uint32_t message_index = reader.u32();
      const uint32_t position = reader.u32();
      terms.push_back(
          VirtualSymbol{message_index + 1, static_cast<uint64_t>(position) + 1});
    }
    for (size_t t = 1; t < terms.size(); ++t) {
      if (!(terms[t - 1] < terms[t])) {
        throw ProtocolError("wire: terms not in canonical order");
      }
    }
    WireSum sum;
    sum.terms = std::move(terms);
    query.sums.push_back(std::move(sum));
  }
  reader.expect_end();
  return query;
}

std::vector<uint8_t> serialize_answer(const AnswerString& answer,
                                      uint64_t alphabet) {
  const uint32_t width = symbol_width(alphabet);
  if (answer.symbols.size() > kMaxU32) {
    throw ProtocolError("wire: too many answer symbols");
  }
  std::vector<uint8_t> out;
  put_u32(out, answer.symbols.size());
  for (uint64_t symbol : answer.symbols) {
    if (symbol >= alphabet) {
      throw ProtocolError("wire: answer symbol out of alphabet");
    }
    for (uint32_t i = 0; i < width; ++i) {
      out.push_back(static_cast<uint8_t>(symbol >> (8 * (width - 1 - i))));
    }
  }
  return out;
}

AnswerString parse_answer(std::span<const uint8_t> bytes, uint64_t alphabet) {
  const uint32_t width = symbol_width(alphabet);
  Reader reader(bytes);
  const uint32_t count = reader.u32();
  AnswerString answer;
  answer.symbols.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    const uint64_t symbol = reader.unsigned_be(width);
    if (symbol >= alphabet) {
      throw ProtocolError("wire: answer symbol out of alphabet");
    }
    answer.symbols.push_back(symbol);
  }
  reader.expect_end();
  return answer;
}

nlohmann::ordered_json query_to_json(const WireQuery& query) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& sum : query.sums) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& term : sum.terms) {
      terms.push_back({term.message_index - 1, term.position - 1});
    }
    entries.push_back(std::move(terms));
  }
  return nlohmann::ordered_json{{"kind", scheme_kind_name(query.kind)},
                                {"alphabet", query.alphabet},
                                {"entries", std::move(entries)}};
}

nlohmann::ordered_json answer_to_json(const AnswerString& answer) {
  return nlohmann::ordered_json{{"symbols", answer.symbols}};
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string hex;
  hex.reserve(bytes.size() * 2);
  for (uint8_t byte : bytes) {
    hex.push_back(digits[byte >> 4]);
    hex.push_back(digits[byte & 0xf]);
  }
  return hex;
}

}  // namespace pir
