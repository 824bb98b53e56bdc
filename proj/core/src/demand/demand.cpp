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

#include "edugrid/demand/demand.hpp"

#include "edugrid/demand/wire.hpp"

namespace edugrid {

const char* demand_type_name(DemandType t) noexcept {
  switch (t) {
    case DemandType::Procedural: return "PROCEDURAL";
    case DemandType::Intensional: return "INTENSIONAL";
    case DemandType::System: return "SYSTEM";
    case DemandType::Resource: return "RESOURCE";
  }
  return "UNKNOWN";
}

const char* demand_state_name(DemandState s) noexcept {
  switch (s) {
    case DemandState::Pending: return "PENDING";
    case DemandState::InProcess: return "IN_PROCESS";
    case DemandState::Computed: return "COMPUTED";
  }
  return "UNKNOWN";
}

std::string Destination::to_string() const {
  switch (tag) {
    case Tag::Dwt: return "DWT";
    case Tag::Dgt: return "DGT";
    case Tag::AnyDest: return "ANY_DEST";
    case Tag::TierId: return "TIER_ID(" + tier_id + ")";
  }
  return "?";
}

std::string DemandSignature::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t v = value;
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

Demand Demand::make(DemandType dtype, Context context, Bytes payload,
                    std::optional<std::string> destination_tier) {
  if (dtype == DemandType::System) {
    if (!destination_tier || destination_tier->empty()) {
      raise(Errc::InvalidDestination, "SYSTEM demand requires a destination tier");
    }
  } else if (destination_tier) {
    raise(Errc::InvalidDestination,
          std::string("destination tier is only valid on SYSTEM demands, got ") +
              demand_type_name(dtype));
  }

  Demand d;
  d.dtype_ = dtype;
  d.context_ = std::move(context);
  d.payload_ = std::move(payload);
  d.destination_tier_ = std::move(destination_tier);
  d.signature_.value = wire::signature_of(d.dtype_, d.context_, d.payload_);
  return d;
}

void Demand::begin_work() {
  if (state_ != DemandState::Pending) {
    raise(Errc::IllegalState, std::string("begin_work on ") + demand_state_name(state_));
  }
  state_ = DemandState::InProcess;
}

void Demand::release_work() {
  if (state_ != DemandState::InProcess) {
    raise(Errc::IllegalState, std::string("release_work on ") + demand_state_name(state_));
  }
  state_ = DemandState::Pending;
}

DemandSignature Demand::store_result(Bytes result) {
  if (state_ != DemandState::InProcess) {
    raise(Errc::IllegalState,
          std::string("store_result requires IN_PROCESS, demand is ") +
              demand_state_name(state_));
  }
  result_ = std::move(result);
  state_ = DemandState::Computed;

  // A result that is itself a serialized demand answers with the embedded
  // demand's identity.
  try {
    Demand embedded = wire::decode_demand(*result_);
    return embedded.signature();
  } catch (const Error&) {
    return signature_;
  }
}

void Demand::record_access(const std::string& tier_id, std::int64_t now_ms) {
  timeline_.append(tier_id, now_ms);  // raises ClockSkew on regression
  ++access_count_;
}

Destination route_destination(const Demand& d) {
  switch (d.dtype()) {
    case DemandType::System:
      return Destination::tier(d.destination_tier().value_or(""));
    case DemandType::Intensional:
      return Destination::dgt();
    case DemandType::Resource:
      return Destination::any_dest();
    case DemandType::Procedural:
      return Destination::dwt();
  }
  // Unknown demand kinds are treated as procedural for compatibility.
  return Destination::dwt();
}

bool demands_equal(const Demand& a, const Demand& b) {
  return a.signature() == b.signature() && a.context() == b.context() &&
         a.dtype() == b.dtype() && a.state() == b.state();
}

bool demands_equal(const Demand* a, const Demand* b) {
  if (a == nullptr || b == nullptr) return false;
  return demands_equal(*a, *b);
}

}  // namespace edugrid
