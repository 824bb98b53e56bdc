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
#include <optional>

#include "edugrid/bytes.hpp"
#include "edugrid/demand/demand.hpp"
#include "edugrid/demand/wire.hpp"

namespace edugrid::transport {

// Frame layout on every transport: [u32 big-endian body length][body].
// body[0] == 0x01 -> canonical demand bytes; body[0] == 0x02 -> control
// message (u8 opcode, then opcode-specific payload).
inline constexpr std::size_t kFrameHeaderBytes = 4;
inline constexpr std::size_t kDefaultMaxFrameBytes = 16u * 1024u * 1024u;

// Control opcodes. 0x0x address the demand store service, 0x2x the node
// control port. Replies share the single Reply opcode.
namespace op {
inline constexpr std::uint8_t kWrite = 0x01;
inline constexpr std::uint8_t kTake = 0x02;
inline constexpr std::uint8_t kPutResult = 0x03;
inline constexpr std::uint8_t kGetResult = 0x04;
inline constexpr std::uint8_t kSubscribe = 0x05;
inline constexpr std::uint8_t kPollEvents = 0x06;
inline constexpr std::uint8_t kUnsubscribe = 0x07;
inline constexpr std::uint8_t kStats = 0x08;
inline constexpr std::uint8_t kLeaseSweep = 0x09;
inline constexpr std::uint8_t kReply = 0x0F;

inline constexpr std::uint8_t kStartTier = 0x20;
inline constexpr std::uint8_t kStopTier = 0x21;
inline constexpr std::uint8_t kKill = 0x22;
inline constexpr std::uint8_t kNodeStats = 0x23;
inline constexpr std::uint8_t kRunJob = 0x24;
inline constexpr std::uint8_t kInjectFault = 0x25;
inline constexpr std::uint8_t kPing = 0x26;
inline constexpr std::uint8_t kShutdown = 0x27;
}  // namespace op

// One decoded frame body: either a demand or a control message.
struct Message {
  enum class Kind : std::uint8_t { Demand, Control };

  Kind kind = Kind::Control;
  std::optional<Demand> demand;  // set iff kind == Demand
  std::uint8_t opcode = 0;       // control only
  Bytes payload;                 // control only

  static Message from_demand(Demand d) {
    Message m;
    m.kind = Kind::Demand;
    m.demand = std::move(d);
    return m;
  }

  static Message control(std::uint8_t opcode, Bytes payload = {}) {
    Message m;
    m.kind = Kind::Control;
    m.opcode = opcode;
    m.payload = std::move(payload);
    return m;
  }
};

Bytes encode_body(const Message& m);
Message decode_body(const Bytes& body);  // raises MalformedFrame

}  // namespace edugrid::transport
