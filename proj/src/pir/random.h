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
#include <random>
#include <vector>

namespace pir {

// Derives an independent 64-bit seed for a sub-stream of a master seed
// (splitmix64 finalizer). Equal inputs give equal outputs on every platform.
uint64_t derive_seed(uint64_t master, uint64_t stream);

// Deterministic random source. All draws go through explicit rejection
// sampling so results are bit-identical across standard library
// implementations (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform value in [0, bound); bound >= 1. Exact, via rejection.
  uint64_t below(uint64_t bound);

  // Uniform bit.
  uint8_t bit() { return static_cast<uint8_t>(below(2)); }

  // Uniform permutation of [1..n], Fisher-Yates.
  std::vector<uint64_t> permutation(uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace pir
