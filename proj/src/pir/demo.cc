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

#include "pir/demo.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pir/qgen.h"

namespace pir {

namespace {

std::string symbol_label(const VirtualSymbol& term, uint32_t num_messages) {
  std::ostringstream out;
  if (num_messages <= 26) {
    out << static_cast<char>('a' + term.message_index - 1) << term.position;
  } else {
    out << "m" << term.message_index << "(" << term.position << ")";
  }
  return out.str();
}

std::string sum_label(const KSum& sum, uint32_t num_messages) {
  std::string label;
  for (size_t i = 0; i < sum.terms.size(); ++i) {
    if (i > 0) {
      label += "+";
    }
    label += symbol_label(sum.terms[i], num_messages);
  }
  return label;
}

}  // namespace

std::string demo_plan_table(uint32_t num_databases, uint32_t num_messages,
                            uint32_t theta) {
  const uint64_t length =
      shortest_capacity_length(num_databases, num_messages);
  if (length > 4096) {
    throw std::invalid_argument("demo: N^(K-1) too large to render");
  }
  SchemeParams params{num_databases, num_messages, length, 2, 2};
  const QueryPlan plan = generate_plan(params, theta);

  std::vector<std::vector<std::string>> columns(num_databases);
  size_t rows = 0;
  size_t width = 8;
  for (uint32_t db = 0; db < num_databases; ++db) {
    for (const auto& entry : plan.per_database[db].entries) {
      columns[db].push_back(sum_label(entry.sum, num_messages));
      width = std::max(width, columns[db].back().size());
    }
    rows = std::max(rows, columns[db].size());
  }

  std::ostringstream out;
  out << "theta = " << theta << ", L = N^(K-1) = " << length << "\n";
  for (uint32_t db = 1; db <= num_databases; ++db) {
    std::string header = "DB" + std::to_string(db);
    header.resize(width, ' ');
    out << header << (db == num_databases ? "\n" : "  ");
  }
  for (size_t row = 0; row < rows; ++row) {
    for (uint32_t db = 0; db < num_databases; ++db) {
      std::string cell =
          row < columns[db].size() ? columns[db][row] : std::string();
      cell.resize(width, ' ');
      out << cell << (db + 1 == num_databases ? "\n" : "  ");
    }
  }
  return out.str();
}

}  // namespace pir
