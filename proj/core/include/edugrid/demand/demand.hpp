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
#include <string>
#include <vector>

#include "edugrid/bytes.hpp"
#include "edugrid/demand/context.hpp"
#include "edugrid/error.hpp"

namespace edugrid {

enum class DemandType : std::uint8_t {
  Procedural = 0,
  Intensional = 1,
  System = 2,
  Resource = 3,
};

enum class DemandState : std::uint8_t {
  Pending = 0,
  InProcess = 1,
  Computed = 2,
};

const char* demand_type_name(DemandType t) noexcept;
const char* demand_state_name(DemandState s) noexcept;

// Where a pending demand should be staged: a worker tier, a generator tier,
// anyone at all, or one specific tier instance (system demands only).
struct Destination {
  enum class Tag : std::uint8_t { Dwt = 0, Dgt = 1, AnyDest = 2, TierId = 3 };

  Tag tag = Tag::Dwt;
  std::string tier_id;  // non-empty iff tag == TierId

  static Destination dwt() { return {Tag::Dwt, {}}; }
  static Destination dgt() { return {Tag::Dgt, {}}; }
  static Destination any_dest() { return {Tag::AnyDest, {}}; }
  static Destination tier(std::string id) {
    if (id.empty()) raise(Errc::InvalidDestination, "TIER_ID destination needs an identifier");
    return {Tag::TierId, std::move(id)};
  }

  std::string to_string() const;

  friend bool operator==(const Destination& a, const Destination& b) {
    return a.tag == b.tag && a.tier_id == b.tier_id;
  }
};

// Content-derived demand identity: 64-bit FNV-1a over the canonical
// encoding of (type, context, payload). Equal work keys equally.
struct DemandSignature {
  std::uint64_t value = 0;

  std::string hex() const;

  friend bool operator==(DemandSignature a, DemandSignature b) { return a.value == b.value; }
  friend bool operator!=(DemandSignature a, DemandSignature b) { return a.value != b.value; }
  friend bool operator<(DemandSignature a, DemandSignature b) { return a.value < b.value; }
};

struct TimePoint {
  std::string tier_id;
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const TimePoint& a, const TimePoint& b) {
    return a.tier_id == b.tier_id && a.timestamp_ms == b.timestamp_ms;
  }
};

// Ordered record of which tier touched a demand and when; timestamps never
// decrease along the list.
class TimeLine {
 public:
  void append(std::string tier_id, std::int64_t timestamp_ms) {
    if (!points_.empty() && timestamp_ms < points_.back().timestamp_ms) {
      raise(Errc::ClockSkew, "timeline timestamp precedes last point");
    }
    points_.push_back({std::move(tier_id), timestamp_ms});
  }

  const std::vector<TimePoint>& points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t size() const noexcept { return points_.size(); }

  std::int64_t last_timestamp_ms() const noexcept {
    return points_.empty() ? 0 : points_.back().timestamp_ms;
  }

  friend bool operator==(const TimeLine& a, const TimeLine& b) { return a.points_ == b.points_; }

 private:
  std::vector<TimePoint> points_;
};

// The unit of eductive work. A Demand is a value: every mutating operation
// happens on a privately owned copy, so instances are freely sendable
// between threads.
class Demand {
 public:
  // Builds a fresh PENDING demand. destination_tier is mandatory for SYSTEM
  // demands and forbidden otherwise.
  static Demand make(DemandType dtype, Context context, Bytes payload,
                     std::optional<std::string> destination_tier = std::nullopt);

  // Caller convenience: an untyped demand is procedural.
  static Demand make(Context context, Bytes payload) {
    return make(DemandType::Procedural, std::move(context), std::move(payload));
  }

  DemandSignature signature() const noexcept { return signature_; }
  DemandType dtype() const noexcept { return dtype_; }
  DemandState state() const noexcept { return state_; }
  const Context& context() const noexcept { return context_; }
  const std::optional<std::string>& destination_tier() const noexcept {
    return destination_tier_;
  }
  const Bytes& payload() const noexcept { return payload_; }
  const std::optional<Bytes>& result() const noexcept { return result_; }
  std::uint64_t access_count() const noexcept { return access_count_; }
  const TimeLine& timeline() const noexcept { return timeline_; }

  // Lifecycle transitions. Only PENDING->IN_PROCESS, IN_PROCESS->COMPUTED
  // (via store_result) and IN_PROCESS->PENDING are legal.
  void begin_work();
  void release_work();

  // Attaches the result and moves to COMPUTED. Returns this demand's
  // signature, unless the result bytes themselves decode as a demand, in
  // which case the embedded demand's signature is returned.
  DemandSignature store_result(Bytes result);

  // Appends a timeline point and bumps the access counter.
  void record_access(const std::string& tier_id, std::int64_t now_ms);

 private:
  friend struct wire_access;

  Demand() = default;

  DemandSignature signature_;
  DemandType dtype_ = DemandType::Procedural;
  DemandState state_ = DemandState::Pending;
  Context context_;
  std::optional<std::string> destination_tier_;
  Bytes payload_;
  std::optional<Bytes> result_;
  std::uint64_t access_count_ = 0;
  TimeLine timeline_;
};

// Routing per the store's staging table: SYSTEM goes to its named tier,
// PROCEDURAL to DWT, INTENSIONAL to DGT, RESOURCE anywhere, and anything
// unrecognized is treated as procedural. Pure in (dtype, destination_tier).
Destination route_destination(const Demand& d);

// Demands compare equal when signature, context, type and state all match.
// Payload, result and timeline do not participate.
bool demands_equal(const Demand& a, const Demand& b);
bool demands_equal(const Demand* a, const Demand* b);

}  // namespace edugrid
