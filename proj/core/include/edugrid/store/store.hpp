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

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "edugrid/demand/demand.hpp"

namespace edugrid::store {

// One staged demand plus its routing and claim bookkeeping. Claim fields
// are set exactly while the demand is IN_PROCESS.
struct StoreEntry {
  Demand demand;
  Destination destination;
  std::optional<std::int64_t> claimed_at_ms;
  std::optional<std::string> claimed_by;
};

enum class WriteOutcome : std::uint8_t {
  Queued = 0,     // new pending entry staged for a taker
  Duplicate = 1,  // signature already known; write folded away
  CacheHit = 2,   // result already cached; computed immediately
};

struct StoreStats {
  std::uint64_t pending = 0;
  std::uint64_t in_process = 0;
  std::uint64_t computed = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t write_cache_hits = 0;
  std::uint64_t notifications_sent = 0;

  std::string to_key_value_lines() const;
  static StoreStats from_key_value_lines(const std::string& text);
};

using ResultCallback = std::function<void(DemandSignature, const Bytes&)>;
using SubscriptionId = std::uint64_t;

// The demand store surface shared by the in-process store and the
// transport-backed client, so tiers never care where the store lives.
class IStore {
 public:
  virtual ~IStore() = default;

  virtual WriteOutcome write(const Demand& d) = 0;
  virtual Demand take_pending(const std::string& taker, const Destination& dest,
                              int timeout_ms) = 0;
  virtual void put_result(DemandSignature sig, const Bytes& result) = 0;
  virtual Bytes get_result(DemandSignature sig, int timeout_ms) = 0;
  virtual SubscriptionId subscribe(ResultCallback callback) = 0;
  virtual void unsubscribe(SubscriptionId id) = 0;
  virtual std::size_t lease_sweep(std::int64_t lease_ms) = 0;
  virtual StoreStats stats() = 0;
};

std::int64_t system_now_ms();

// The Demand Store Tier: a linearizable staging area. All transitions
// happen under one lock in a single commit order; subscriber callbacks are
// dispatched by a dedicated notifier thread outside that critical section
// and must not call back into the store synchronously.
class DemandStore : public IStore {
 public:
  using ClockFn = std::function<std::int64_t()>;

  explicit DemandStore(ClockFn clock = {});
  ~DemandStore() override;

  DemandStore(const DemandStore&) = delete;
  DemandStore& operator=(const DemandStore&) = delete;

  WriteOutcome write(const Demand& d) override;

  // Atomically claims the oldest matching PENDING entry for `taker`.
  // `dest` must be DWT, DGT or the taker's own TIER_ID; entries staged
  // ANY_DEST match any query but exact-destination entries win first.
  Demand take_pending(const std::string& taker, const Destination& dest,
                      int timeout_ms) override;

  void put_result(DemandSignature sig, const Bytes& result) override;
  Bytes get_result(DemandSignature sig, int timeout_ms) override;

  SubscriptionId subscribe(ResultCallback callback) override;
  void unsubscribe(SubscriptionId id) override;

  // Reverts every IN_PROCESS entry claimed longer than lease_ms ago to
  // PENDING so another node can take it. Returns the number reverted.
  std::size_t lease_sweep(std::int64_t now_ms, std::int64_t lease_ms);
  std::size_t lease_sweep(std::int64_t lease_ms) override;

  StoreStats stats() override;

  // Blocks until queued subscriber notifications are dispatched.
  void drain_notifications();

 private:
  struct Notification {
    DemandSignature sig;
    Bytes result;
    std::vector<std::pair<SubscriptionId, ResultCallback>> targets;
  };

  void notifier_main();
  void enqueue_notifications_locked(DemandSignature sig, const Bytes& result);

  ClockFn clock_;

  mutable std::mutex mutex_;
  std::condition_variable take_cv_;
  std::condition_variable result_cv_;

  std::map<std::uint64_t, StoreEntry> entries_;
  std::vector<std::uint64_t> arrival_order_;
  std::map<std::uint64_t, Bytes> cache_;
  std::map<SubscriptionId, ResultCallback> subscribers_;
  std::map<std::uint64_t, std::set<SubscriptionId>> notified_;
  SubscriptionId next_subscription_ = 1;

  std::uint64_t cache_hits_ = 0;
  std::uint64_t cache_misses_ = 0;
  std::uint64_t write_cache_hits_ = 0;
  std::uint64_t notifications_sent_ = 0;

  std::mutex notify_mutex_;
  std::condition_variable notify_cv_;
  std::condition_variable notify_idle_cv_;
  std::deque<Notification> notify_queue_;
  bool notifier_busy_ = false;
  bool shutdown_ = false;
  std::thread notifier_;
};

}  // namespace edugrid::store
