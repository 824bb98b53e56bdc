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

#include "edugrid/store/store.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace edugrid::store {

std::int64_t system_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string StoreStats::to_key_value_lines() const {
  std::ostringstream out;
  out << "pending=" << pending << '\n';
  out << "inProcess=" << in_process << '\n';
  out << "computed=" << computed << '\n';
  out << "cacheHits=" << cache_hits << '\n';
  out << "cacheMisses=" << cache_misses << '\n';
  out << "writeCacheHits=" << write_cache_hits << '\n';
  out << "notificationsSent=" << notifications_sent << '\n';
  return out.str();
}

StoreStats StoreStats::from_key_value_lines(const std::string& text) {
  StoreStats s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::uint64_t value = std::strtoull(line.c_str() + eq + 1, nullptr, 10);
    if (key == "pending") s.pending = value;
    else if (key == "inProcess") s.in_process = value;
    else if (key == "computed") s.computed = value;
    else if (key == "cacheHits") s.cache_hits = value;
    else if (key == "cacheMisses") s.cache_misses = value;
    else if (key == "writeCacheHits") s.write_cache_hits = value;
    else if (key == "notificationsSent") s.notifications_sent = value;
  }
  return s;
}

DemandStore::DemandStore(ClockFn clock) : clock_(clock ? std::move(clock) : system_now_ms) {
  notifier_ = std::thread([this] { notifier_main(); });
}

DemandStore::~DemandStore() {
  {
    std::lock_guard<std::mutex> lock(notify_mutex_);
    shutdown_ = true;
  }
  notify_cv_.notify_all();
  if (notifier_.joinable()) notifier_.join();
}

void DemandStore::notifier_main() {
  while (true) {
    Notification n;
    {
      std::unique_lock<std::mutex> lock(notify_mutex_);
      notify_cv_.wait(lock, [this] { return shutdown_ || !notify_queue_.empty(); });
      if (notify_queue_.empty()) return;  // shutdown with nothing pending
      n = std::move(notify_queue_.front());
      notify_queue_.pop_front();
      notifier_busy_ = true;
    }
    for (auto& [id, callback] : n.targets) {
      callback(n.sig, n.result);
      std::lock_guard<std::mutex> lock(mutex_);
      ++notifications_sent_;
    }
    {
      std::lock_guard<std::mutex> lock(notify_mutex_);
      notifier_busy_ = false;
    }
    notify_idle_cv_.notify_all();
  }
}

void DemandStore::drain_notifications() {
  std::unique_lock<std::mutex> lock(notify_mutex_);
  notify_idle_cv_.wait(lock, [this] { return notify_queue_.empty() && !notifier_busy_; });
}

// Caller holds mutex_. Targets every subscriber that has not yet seen this
// signature, so a callback fires exactly once per (subscriber, signature).
void DemandStore::enqueue_notifications_locked(DemandSignature sig, const Bytes& result) {
  auto& seen = notified_[sig.value];
  Notification n;
  n.sig = sig;
  n.result = result;
  for (const auto& [id, callback] : subscribers_) {
    if (seen.insert(id).second) n.targets.emplace_back(id, callback);
  }
  if (n.targets.empty()) return;
  {
    std::lock_guard<std::mutex> lock(notify_mutex_);
    notify_queue_.push_back(std::move(n));
  }
  notify_cv_.notify_one();
}

WriteOutcome DemandStore::write(const Demand& d) {
  WriteOutcome outcome;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t sig = d.signature().value;

    auto cached = cache_.find(sig);
    if (cached != cache_.end()) {
      ++write_cache_hits_;
      enqueue_notifications_locked(d.signature(), cached->second);
      return WriteOutcome::CacheHit;
    }

    if (entries_.count(sig) != 0) return WriteOutcome::Duplicate;
    if (d.state() != DemandState::Pending) return WriteOutcome::Duplicate;

    StoreEntry entry{d, route_destination(d), std::nullopt, std::nullopt};
    entries_.emplace(sig, std::move(entry));
    arrival_order_.push_back(sig);
    outcome = WriteOutcome::Queued;
  }
  take_cv_.notify_all();
  return outcome;
}

namespace {

bool exact_match(const Destination& staged, const Destination& query) {
  return staged.tag == query.tag && staged.tier_id == query.tier_id;
}

}  // namespace

Demand DemandStore::take_pending(const std::string& taker, const Destination& dest,
                                 int timeout_ms) {
  if (dest.tag == Destination::Tag::AnyDest) {
    raise(Errc::InvalidDestination, "takers query DWT, DGT or their own TIER_ID");
  }
  if (dest.tag == Destination::Tag::TierId && dest.tier_id != taker) {
    raise(Errc::InvalidDestination,
          "taker '" + taker + "' cannot take for tier '" + dest.tier_id + "'");
  }

  std::unique_lock<std::mutex> lock(mutex_);
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (true) {
    StoreEntry* exact = nullptr;
    StoreEntry* fallback = nullptr;
    for (std::uint64_t sig : arrival_order_) {
      auto it = entries_.find(sig);
      if (it == entries_.end()) continue;
      StoreEntry& entry = it->second;
      if (entry.demand.state() != DemandState::Pending) continue;
      if (exact_match(entry.destination, dest)) {
        exact = &entry;
        break;
      }
      if (fallback == nullptr && entry.destination.tag == Destination::Tag::AnyDest) {
        fallback = &entry;
      }
    }
    StoreEntry* pick = exact != nullptr ? exact : fallback;
    if (pick != nullptr) {
      const std::int64_t now = std::max(clock_(), pick->demand.timeline().last_timestamp_ms());
      pick->demand.begin_work();
      pick->demand.record_access(taker, now);
      pick->claimed_at_ms = now;
      pick->claimed_by = taker;
      return pick->demand;
    }
    if (take_cv_.wait_until(lock, deadline) == std::cv_status::timeout) {
      // One final scan in case a writer slipped in right at the deadline.
      bool any = false;
      for (std::uint64_t sig : arrival_order_) {
        auto it = entries_.find(sig);
        if (it != entries_.end() && it->second.demand.state() == DemandState::Pending) {
          const Destination& staged = it->second.destination;
          if (exact_match(staged, dest) || staged.tag == Destination::Tag::AnyDest) {
            any = true;
            break;
          }
        }
      }
      if (!any) {
        raise(Errc::TimeoutExpired, "no pending demand for " + dest.to_string() + " within " +
                                        std::to_string(timeout_ms) + " ms");
      }
    }
  }
}

void DemandStore::put_result(DemandSignature sig, const Bytes& result) {
  {
    std::lock_guard<std::mutex> lock(mutex_);

    auto cached = cache_.find(sig.value);
    if (cached != cache_.end()) {
      if (cached->second != result) {
        raise(Errc::ResultConflict, "different result re-put for " + sig.hex());
      }
      return;  // idempotent re-put, no second notification
    }

    auto it = entries_.find(sig.value);
    if (it == entries_.end()) {
      raise(Errc::UnknownDemand, "no demand staged under " + sig.hex());
    }
    StoreEntry& entry = it->second;

    // A late put after lease expiry lands on a PENDING entry; executors are
    // deterministic, so the early result is accepted and the retake becomes
    // a no-op when it completes with identical bytes.
    if (entry.demand.state() == DemandState::Pending) entry.demand.begin_work();
    entry.demand.store_result(result);
    entry.claimed_at_ms.reset();
    entry.claimed_by.reset();

    cache_.emplace(sig.value, result);
    enqueue_notifications_locked(sig, result);
  }
  result_cv_.notify_all();
}

Bytes DemandStore::get_result(DemandSignature sig, int timeout_ms) {
  std::unique_lock<std::mutex> lock(mutex_);
  auto it = cache_.find(sig.value);
  if (it != cache_.end()) {
    ++cache_hits_;
    return it->second;
  }

  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (true) {
    if (result_cv_.wait_until(lock, deadline) == std::cv_status::timeout) {
      if (cache_.count(sig.value) != 0) break;
      raise(Errc::TimeoutExpired,
            "no result for " + sig.hex() + " within " + std::to_string(timeout_ms) + " ms");
    }
    if (cache_.count(sig.value) != 0) break;
  }
  ++cache_misses_;  // served, but only after waiting
  return cache_.at(sig.value);
}

SubscriptionId DemandStore::subscribe(ResultCallback callback) {
  std::lock_guard<std::mutex> lock(mutex_);
  SubscriptionId id = next_subscription_++;
  subscribers_.emplace(id, std::move(callback));
  return id;
}

void DemandStore::unsubscribe(SubscriptionId id) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (subscribers_.erase(id) == 0) {
    raise(Errc::UnknownSubscription, "subscription " + std::to_string(id));
  }
}

std::size_t DemandStore::lease_sweep(std::int64_t now_ms, std::int64_t lease_ms) {
  std::size_t reverted = 0;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (auto& [sig, entry] : entries_) {
      if (entry.demand.state() != DemandState::InProcess) continue;
      if (!entry.claimed_at_ms) continue;
      if (now_ms - *entry.claimed_at_ms > lease_ms) {
        entry.demand.release_work();
        entry.claimed_at_ms.reset();
        entry.claimed_by.reset();
        ++reverted;
      }
    }
  }
  if (reverted > 0) take_cv_.notify_all();
  return reverted;
}

std::size_t DemandStore::lease_sweep(std::int64_t lease_ms) {
  return lease_sweep(clock_(), lease_ms);
}

StoreStats DemandStore::stats() {
  std::lock_guard<std::mutex> lock(mutex_);
  StoreStats s;
  for (const auto& [sig, entry] : entries_) {
    switch (entry.demand.state()) {
      case DemandState::Pending: ++s.pending; break;
      case DemandState::InProcess: ++s.in_process; break;
      case DemandState::Computed: ++s.computed; break;
    }
  }
  s.cache_hits = cache_hits_;
  s.cache_misses = cache_misses_;
  s.write_cache_hits = write_cache_hits_;
  s.notifications_sent = notifications_sent_;
  return s;
}

}  // namespace edugrid::store
