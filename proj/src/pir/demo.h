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
#include <string>

#include "pir/core.h"

namespace pir {

// Renders the deterministic query plan for L = N^(K-1) as a per-database
// table with symbolic labels (a1, b2, ...): what each database is asked
// before the private position mapping is applied.
std::string demo_plan_table(uint32_t num_databases, uint32_t num_messages,
                            uint32_t theta);

}  // namespace pir
