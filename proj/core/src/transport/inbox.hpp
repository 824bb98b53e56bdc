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

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <string>

#include "edugrid/bytes.hpp"
#include "edugrid/error.hpp"

namespace edugrid::transport {

// FIFO queue of received frame bodies. Queued bodies stay deliverable
// after closure; only once drained does the close reason surface.
class Inbox {
 public:
  struct Pop {
    enum class Kind { Got, Timeout, Closed } kind;
    Bytes body;
    Errc code = Errc::Disconnected;
    std::string detail;
  };

  void push(Bytes body) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (closed_) return;  // frames after failure are dropped
      queue_.push_back(std::move(body));
    }
    cv_.notify_one();
  }

  Pop pop(int timeout_ms) {
    std::unique_lock<std::mutex> lock(mutex_);
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    while (true) {
      if (!queue_.empty()) {
        Pop out{Pop::Kind::Got, std::move(queue_.front()), Errc::Disconnected, {}};
        queue_.pop_front();
        return out;
      }
      if (closed_) return {Pop::Kind::Closed, {}, code_, detail_};
      if (cv_.wait_until(lock, deadline) == std::cv_status::timeout && queue_.empty() &&
          !closed_) {
        return {Pop::Kind::Timeout, {}, Errc::TimeoutExpired, {}};
      }
    }
  }

  void close(Errc code, std::string detail) {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (closed_) return;
      closed_ = true;
      code_ = code;
      detail_ = std::move(detail);
    }
    cv_.notify_all();
  }

  bool closed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return closed_;
  }

 private:
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<Bytes> queue_;
  bool closed_ = false;
  Errc code_ = Errc::Disconnected;
  std::string detail_;
};

}  // namespace edugrid::transport
