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

#include "edugrid/bytes.hpp"
#include "edugrid/demand/demand.hpp"

namespace edugrid::wire {

// Canonical demand serialization, version 0x01. This single byte layout is
// shared by signature computation, the transport frame body and file
// persistence, so it must never change shape without a version bump:
//
//   u8  version (0x01)
//   u8  dtype
//   u8  state
//   u8  destination-present flag, then str destination tier if set
//   u32 context dim count, then (str name, str tag) sorted by name
//   u32 payload length + payload bytes
//   u8  result-present flag, then u32 length + result bytes if set
//   u64 access count
//   u32 timeline point count, then (str tierId, i64 timestampMs) each
//
// Integers are little-endian; strings are u32-length-prefixed UTF-8.
inline constexpr std::uint8_t kDemandVersion = 0x01;
inline constexpr std::uint8_t kControlVersion = 0x02;

Bytes encode_demand(const Demand& d);

// Strict decode: rejects bad version, unknown enum values, non-canonical
// context order, timeline regressions, a broken access-count/timeline
// pairing, and trailing bytes. Raises MalformedFrame.
Demand decode_demand(const Bytes& body);

// The signature digest input: (dtype, canonical context, payload) only —
// lifecycle fields never perturb identity.
std::uint64_t signature_of(DemandType dtype, const Context& context, const Bytes& payload);

}  // namespace edugrid::wire
