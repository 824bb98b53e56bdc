// Copyright 2026 The EduGrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "edugrid/error.hpp"

namespace edugrid::transport {

enum class TransportKind : std::uint8_t { Local = 0, Tcp = 1 };

const char* transport_kind_name(TransportKind kind) noexcept;
TransportKind transport_kind_from_name(const std::string& name);

// Rendezvous address. LOCAL agents meet on a named in-process bus; TCP
// agents use host:port (port 0 asks the OS for an ephemeral port).
struct Endpoint {
  std::string host;  // bus name for LOCAL, hostname/IP for TCP
  std::uint16_t port = 0;

  static Endpoint local_bus(std::string name) {
    if (name.empty()) raise(Errc::ConnectFailed, "LOCAL bus name must be non-empty");
    return {std::move(name), 0};
  }

  static Endpoint tcp(std::string host, std::uint16_t port) {
    if (host.empty()) raise(Errc::ConnectFailed, "TCP host must be non-empty");
    return {std::move(host), port};
  }

  std::string to_string() const { return host + ":" + std::to_string(port); }

  // "host:port" for TCP, bare bus name for LOCAL.
  static Endpoint parse(TransportKind kind, const std::string& text);
};

enum class Role : std::uint8_t { Client = 0, Server = 1 };

}  // namespace edugrid::transport
