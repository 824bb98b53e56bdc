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

#include "edugrid/transport/message.hpp"

namespace edugrid::transport {

Bytes encode_body(const Message& m) {
  if (m.kind == Message::Kind::Demand) {
    return wire::encode_demand(*m.demand);
  }
  ByteWriter out;
  out.u8(wire::kControlVersion);
  out.u8(m.opcode);
  out.raw(m.payload);
  return out.take();
}

Message decode_body(const Bytes& body) {
  if (body.empty()) raise(Errc::MalformedFrame, "empty frame body");
  if (body[0] == wire::kDemandVersion) {
    return Message::from_demand(wire::decode_demand(body));
  }
  if (body[0] == wire::kControlVersion) {
    if (body.size() < 2) raise(Errc::MalformedFrame, "control frame without opcode");
    Message m;
    m.kind = Message::Kind::Control;
    m.opcode = body[1];
    m.payload.assign(body.begin() + 2, body.end());
    return m;
  }
  raise(Errc::MalformedFrame, "unknown body version byte");
}

}  // namespace edugrid::transport
