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

#include "edugrid/transport/endpoint.hpp"

#include <cstdlib>

namespace edugrid::transport {

const char* transport_kind_name(TransportKind kind) noexcept {
  return kind == TransportKind::Local ? "local" : "tcp";
}

TransportKind transport_kind_from_name(const std::string& name) {
  if (name == "local") return TransportKind::Local;
  if (name == "tcp") return TransportKind::Tcp;
  raise(Errc::ConnectFailed, "unknown transport kind '" + name + "'");
}

Endpoint Endpoint::parse(TransportKind kind, const std::string& text) {
  if (kind == TransportKind::Local) return Endpoint::local_bus(text);

  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    raise(Errc::ConnectFailed, "TCP endpoint must be host:port, got '" + text + "'");
  }
  const std::string host = text.substr(0, colon);
  char* end = nullptr;
  long port = std::strtol(text.c_str() + colon + 1, &end, 10);
  if (end == nullptr || *end != '\0' || port < 0 || port > 65535) {
    raise(Errc::ConnectFailed, "bad TCP port in '" + text + "'");
  }
  return Endpoint::tcp(host, static_cast<std::uint16_t>(port));
}

}  // namespace edugrid::transport
