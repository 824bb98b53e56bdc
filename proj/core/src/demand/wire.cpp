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

#include "edugrid/demand/wire.hpp"

namespace edugrid {

// Private-member access for the codec; nothing else reaches inside Demand.
struct wire_access {
  static Demand decode(ByteReader& in);
  static void encode(const Demand& d, ByteWriter& out);
};

void wire_access::encode(const Demand& d, ByteWriter& out) {
  out.u8(wire::kDemandVersion);
  out.u8(static_cast<std::uint8_t>(d.dtype_));
  out.u8(static_cast<std::uint8_t>(d.state_));
  out.u8(d.destination_tier_ ? 1 : 0);
  if (d.destination_tier_) out.str(*d.destination_tier_);
  d.context_.encode(out);
  out.blob(d.payload_);
  out.u8(d.result_ ? 1 : 0);
  if (d.result_) out.blob(*d.result_);
  out.u64(d.access_count_);
  out.u32(static_cast<std::uint32_t>(d.timeline_.size()));
  for (const TimePoint& p : d.timeline_.points()) {
    out.str(p.tier_id);
    out.i64(p.timestamp_ms);
  }
}

Demand wire_access::decode(ByteReader& in) {
  if (in.u8() != wire::kDemandVersion) raise(Errc::MalformedFrame, "bad demand version");

  Demand d;
  std::uint8_t dtype = in.u8();
  if (dtype > static_cast<std::uint8_t>(DemandType::Resource)) {
    raise(Errc::MalformedFrame, "unknown demand type");
  }
  d.dtype_ = static_cast<DemandType>(dtype);

  std::uint8_t state = in.u8();
  if (state > static_cast<std::uint8_t>(DemandState::Computed)) {
    raise(Errc::MalformedFrame, "unknown demand state");
  }
  d.state_ = static_cast<DemandState>(state);

  if (in.u8() != 0) d.destination_tier_ = in.str();
  d.context_ = Context::decode(in);
  d.payload_ = in.blob();
  if (in.u8() != 0) d.result_ = in.blob();
  d.access_count_ = in.u64();

  std::uint32_t points = in.u32();
  for (std::uint32_t i = 0; i < points; ++i) {
    std::string tier = in.str();
    std::int64_t ts = in.i64();
    if (!d.timeline_.empty() && ts < d.timeline_.last_timestamp_ms()) {
      raise(Errc::MalformedFrame, "timeline timestamps regress");
    }
    d.timeline_.append(std::move(tier), ts);
  }

  // Cross-field invariants the model promises.
  if (d.access_count_ != d.timeline_.size()) {
    raise(Errc::MalformedFrame, "access count does not match timeline");
  }
  if ((d.state_ == DemandState::Computed) != d.result_.has_value()) {
    raise(Errc::MalformedFrame, "result presence does not match state");
  }
  if ((d.dtype_ == DemandType::System) != d.destination_tier_.has_value()) {
    raise(Errc::MalformedFrame, "destination tier presence does not match type");
  }

  d.signature_.value = wire::signature_of(d.dtype_, d.context_, d.payload_);
  return d;
}

namespace wire {

Bytes encode_demand(const Demand& d) {
  ByteWriter out;
  wire_access::encode(d, out);
  return out.take();
}

Demand decode_demand(const Bytes& body) {
  ByteReader in(body);
  Demand d = wire_access::decode(in);
  in.expect_done();
  return d;
}

std::uint64_t signature_of(DemandType dtype, const Context& context, const Bytes& payload) {
  ByteWriter out;
  out.u8(static_cast<std::uint8_t>(dtype));
  context.encode(out);
  out.blob(payload);
  return fnv1a64(out.data());
}

}  // namespace wire
}  // namespace edugrid
