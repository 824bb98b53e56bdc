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

#include <atomic>
#include <mutex>
#include <string>

#include "edugrid/diag.hpp"
#include "edugrid/transport/transport.hpp"
#include "transport/inbox.hpp"

namespace edugrid::transport {

// Shared channel skeleton: framing checks, decode-on-receive, and the
// one-event-per-failure bookkeeping. Concrete channels supply raw body
// delivery and teardown.
class ChannelBase : public TransportAgent {
 public:
  explicit ChannelBase(Options options) : options_(options) {}

  void send(const Demand& d) override { send_body(encode_body(Message::from_demand(d))); }

  void send_control(std::uint8_t opcode, const Bytes& payload) override {
    send_body(encode_body(Message::control(opcode, payload)));
  }

  void send_raw_body(const Bytes& body) override { send_body(Bytes(body)); }

  Message recv_message(int timeout_ms) override {
    Inbox::Pop r = inbox().pop(timeout_ms);
    switch (r.kind) {
      case Inbox::Pop::Kind::Got:
        try {
          return decode_body(r.body);
        } catch (const Error& e) {
          if (e.code() == Errc::MalformedFrame) fail(Errc::MalformedFrame, e.what());
          throw;
        }
      case Inbox::Pop::Kind::Timeout:
        raise(Errc::TimeoutExpired, "recv timed out on " + describe());
      case Inbox::Pop::Kind::Closed:
      default:
        throw Error(r.code, r.detail.empty() ? "connection closed" : r.detail);
    }
  }

  void set_exception_handler(ExceptionHandler handler) override {
    std::lock_guard<std::mutex> lock(handler_mutex_);
    handler_ = std::move(handler);  // last registration wins
  }

  bool is_open() const override { return !inbox_closed(); }

 protected:
  // Reports one failure event: through the handler when registered,
  // otherwise on the diagnostic stream. Then tears the channel down.
  void fail(Errc code, const std::string& detail) {
    bool expected = false;
    if (!failure_reported_.compare_exchange_strong(expected, true)) {
      close_io(code, detail);
      return;
    }
    ExceptionHandler handler;
    {
      std::lock_guard<std::mutex> lock(handler_mutex_);
      handler = handler_;
    }
    if (handler) {
      handler(code, detail);
    } else {
      diag::log(diag::Level::Warn, "transport",
                describe() + ": " + std::string(errc_name(code)) + ": " + detail);
    }
    close_io(code, detail);
  }

  // Orderly shutdown never reports a local failure event.
  void suppress_failure_event() { failure_reported_.store(true); }

  void send_body(Bytes body) {
    if (body.size() > options_.max_frame_bytes) {
      raise(Errc::FrameTooLarge, "frame body of " + std::to_string(body.size()) +
                                     " bytes exceeds maximum of " +
                                     std::to_string(options_.max_frame_bytes));
    }
    deliver_body(std::move(body));
  }

  virtual void deliver_body(Bytes body) = 0;
  virtual Inbox& inbox() = 0;
  virtual bool inbox_closed() const = 0;
  virtual void close_io(Errc code, const std::string& detail) = 0;

  Options options_;

 private:
  std::mutex handler_mutex_;
  ExceptionHandler handler_;
  std::atomic<bool> failure_reported_{false};
};

}  // namespace edugrid::transport
