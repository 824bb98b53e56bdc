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
#include <map>
#include <string>

#include "edugrid/bytes.hpp"

namespace edugrid {

// The dimension->tag map a demand is evaluated under. Dimension names are
// unique and canonical order is lexicographic, so two equal contexts always
// serialize to identical bytes (the property the result cache keys on).
class Context {
 public:
  Context() = default;

  Context& set(std::string dimension, std::string tag) {
    dims_[std::move(dimension)] = std::move(tag);
    return *this;
  }

  // Numeric tags go through here so the canonical text form is unique
  // (plain decimal, no leading zeros).
  Context& set_numeric(std::string dimension, std::int64_t tag) {
    return set(std::move(dimension), std::to_string(tag));
  }

  bool has(const std::string& dimension) const { return dims_.count(dimension) != 0; }

  const std::string& get(const std::string& dimension) const {
    static const std::string kEmpty;
    auto it = dims_.find(dimension);
    return it == dims_.end() ? kEmpty : it->second;
  }

  std::size_t size() const noexcept { return dims_.size(); }
  bool empty() const noexcept { return dims_.empty(); }

  const std::map<std::string, std::string>& dims() const noexcept { return dims_; }

  void encode(ByteWriter& out) const {
    out.u32(static_cast<std::uint32_t>(dims_.size()));
    for (const auto& [name, tag] : dims_) {
      out.str(name);
      out.str(tag);
    }
  }

  static Context decode(ByteReader& in) {
    Context ctx;
    std::uint32_t count = in.u32();
    std::string prev;
    for (std::uint32_t i = 0; i < count; ++i) {
      std::string name = in.str();
      if (i > 0 && name <= prev) raise(Errc::MalformedFrame, "context dims not canonical");
      std::string tag = in.str();
      prev = name;
      ctx.dims_.emplace(std::move(name), std::move(tag));
    }
    return ctx;
  }

  Bytes canonical_bytes() const {
    ByteWriter out;
    encode(out);
    return out.take();
  }

  friend bool operator==(const Context& a, const Context& b) { return a.dims_ == b.dims_; }
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }

 private:
  std::map<std::string, std::string> dims_;
};

}  // namespace edugrid
