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
#include <thread>

#include "pir/core.h"
#include "pir/sim.h"
#include "pir/wire.h"

// Optional loopback transport: one database actor behind a TCP socket,
// answering the same bytes the in-process path produces. Frames are a
// 4-byte big-endian length followed by the serialized query or answer.

namespace pir {

class LoopbackDatabase {
 public:
  // Binds 127.0.0.1 on an ephemeral port and starts answering.
  explicit LoopbackDatabase(MessageStore store);
  ~LoopbackDatabase();

  LoopbackDatabase(const LoopbackDatabase&) = delete;
  LoopbackDatabase& operator=(const LoopbackDatabase&) = delete;

  uint16_t port() const { return port_; }

 private:
  void serve();

  MessageStore store_;
  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::thread thread_;
};

// Sends one query and waits for the answer.
AnswerString query_over_socket(uint16_t port, const WireQuery& query);

}  // namespace pir
