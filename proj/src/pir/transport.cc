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

#include "pir/transport.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>
#include <vector>

namespace pir {

namespace {

void write_all(int fd, const uint8_t* data, size_t size) {
  while (size > 0) {
    const ssize_t written = ::write(fd, data, size);
    if (written <= 0) {
      throw ProtocolError("transport: write failed");
    }
    data += written;
    size -= static_cast<size_t>(written);
  }
}

bool read_all(int fd, uint8_t* data, size_t size) {
  while (size > 0) {
    const ssize_t got = ::read(fd, data, size);
    if (got == 0) {
      return false;  // orderly shutdown
    }
    if (got < 0) {
      throw ProtocolError("transport: read failed");
    }
    data += got;
    size -= static_cast<size_t>(got);
  }
  return true;
}

void write_frame(int fd, const std::vector<uint8_t>& payload) {
  uint8_t header[4] = {
      static_cast<uint8_t>(payload.size() >> 24),
      static_cast<uint8_t>(payload.size() >> 16),
      static_cast<uint8_t>(payload.size() >> 8),
      static_cast<uint8_t>(payload.size()),
  };
  write_all(fd, header, sizeof header);
  write_all(fd, payload.data(), payload.size());
}

bool read_frame(int fd, std::vector<uint8_t>& payload) {
  uint8_t header[4];
  if (!read_all(fd, header, sizeof header)) {
    return false;
  }
  const uint32_t size = (static_cast<uint32_t>(header[0]) << 24) |
                        (static_cast<uint32_t>(header[1]) << 16) |
                        (static_cast<uint32_t>(header[2]) << 8) | header[3];
  if (size > (1u << 26)) {
    throw ProtocolError("transport: oversized frame");
  }
  payload.resize(size);
  return read_all(fd, payload.data(), size);
}

}  // namespace

LoopbackDatabase::LoopbackDatabase(MessageStore store)
    : store_(std::move(store)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) {
    throw ProtocolError("transport: socket failed");
  }
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) <
          0 ||
      ::listen(listen_fd_, 8) < 0) {
    ::close(listen_fd_);
    throw ProtocolError("transport: bind/listen failed");
  }
  socklen_t addr_len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &addr_len);
  port_ = ntohs(addr.sin_port);
  thread_ = std::thread(&LoopbackDatabase::serve, this);
}

LoopbackDatabase::~LoopbackDatabase() {
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (thread_.joinable()) {
    thread_.join();
  }
}

void LoopbackDatabase::serve() {
  while (true) {
    const int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) {
      return;  // listener closed
    }
    try {
      std::vector<uint8_t> payload;
      while (read_frame(client, payload)) {
        const WireQuery query = parse_query(payload);
        const AnswerString answer = answer_query(query, store_);
        write_frame(client, serialize_answer(answer, query.alphabet));
      }
    } catch (const std::exception&) {
      // drop the connection; the client sees a short read
    }
    ::close(client);
  }
}

AnswerString query_over_socket(uint16_t port, const WireQuery& query) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) {
    throw ProtocolError("transport: socket failed");
  }
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    ::close(fd);
    throw ProtocolError("transport: connect failed");
  }
  try {
    write_frame(fd, serialize_query(query));
    std::vector<uint8_t> payload;
    if (!read_frame(fd, payload)) {
      throw ProtocolError("transport: connection closed");
    }
    ::close(fd);
    return parse_answer(payload, query.alphabet);
  } catch (...) {
    ::close(fd);
    throw;
  }
}

}  // namespace pir
