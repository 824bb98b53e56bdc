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

#include "edugrid/transport/transport.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "transport/impl.hpp"

namespace edugrid::transport {

Demand TransportAgent::recv(int timeout_ms) {
  Message m = recv_message(timeout_ms);
  if (m.kind != Message::Kind::Demand) {
    raise(Errc::MalformedFrame, "control frame on a demand conversation");
  }
  return std::move(*m.demand);
}

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left < 0 ? 0 : static_cast<int>(left);
}

// The SERVER side of a two-peer conversation: the first connection on the
// listener becomes the peer, anything after it is refused.
class ServerAgent : public TransportAgent {
 public:
  ServerAgent(std::unique_ptr<TransportListener> listener, Options options)
      : listener_(std::move(listener)), options_(options) {
    acceptor_ = std::thread([this] { accept_main(); });
  }

  ~ServerAgent() override {
    close();
    if (acceptor_.joinable()) acceptor_.join();
  }

  void send(const Demand& d) override { peer_for_send()->send(d); }

  void send_control(std::uint8_t opcode, const Bytes& payload) override {
    peer_for_send()->send_control(opcode, payload);
  }

  void send_raw_body(const Bytes& body) override { peer_for_send()->send_raw_body(body); }

  Message recv_message(int timeout_ms) override {
    auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
    TransportAgent* peer = wait_for_peer(timeout_ms);
    if (peer == nullptr) raise(Errc::TimeoutExpired, "no peer connected within timeout");
    return peer->recv_message(remaining_ms(deadline));
  }

  void set_exception_handler(ExceptionHandler handler) override {
    std::lock_guard<std::mutex> lock(mutex_);
    handler_ = std::move(handler);
    if (peer_) peer_->set_exception_handler(handler_);
  }

  void close() override {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (closed_) return;
      closed_ = true;
    }
    listener_->close();
    cv_.notify_all();
    std::lock_guard<std::mutex> lock(mutex_);
    if (peer_) peer_->close();
  }

  bool is_open() const override {
    std::lock_guard<std::mutex> lock(mutex_);
    return !closed_;
  }

  std::uint16_t bound_port() const override { return listener_->endpoint().port; }

  std::string describe() const override {
    return "server@" + listener_->endpoint().to_string();
  }

 private:
  void accept_main() {
    while (true) {
      {
        std::lock_guard<std::mutex> lock(mutex_);
        if (closed_) return;
      }
      std::unique_ptr<TransportAgent> conn;
      try {
        conn = listener_->accept(100);
      } catch (const Error& e) {
        if (e.code() == Errc::TimeoutExpired) continue;
        return;  // listener closed
      }
      std::lock_guard<std::mutex> lock(mutex_);
      if (closed_) {
        conn->close();
        return;
      }
      if (peer_) {
        conn->close();  // one peer per agent
        continue;
      }
      peer_ = std::move(conn);
      if (handler_) peer_->set_exception_handler(handler_);
      cv_.notify_all();
    }
  }

  TransportAgent* wait_for_peer(int timeout_ms) {
    std::unique_lock<std::mutex> lock(mutex_);
    auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
    cv_.wait_until(lock, deadline, [this] { return peer_ != nullptr || closed_; });
    if (closed_ && !peer_) raise(Errc::Disconnected, "agent closed");
    return peer_.get();
  }

  TransportAgent* peer_for_send() {
    TransportAgent* peer = wait_for_peer(options_.connect_timeout_ms);
    if (peer == nullptr) raise(Errc::Disconnected, "no peer connected");
    return peer;
  }

  std::unique_ptr<TransportListener> listener_;
  Options options_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::unique_ptr<TransportAgent> peer_;
  ExceptionHandler handler_;
  bool closed_ = false;
  std::thread acceptor_;
};

}  // namespace

std::unique_ptr<TransportListener> open_listener(TransportKind kind, const Endpoint& endpoint,
                                                 const Options& options) {
  switch (kind) {
    case TransportKind::Local: return local_listen(endpoint, options);
    case TransportKind::Tcp: return tcp_listen(endpoint, options);
  }
  raise(Errc::ConnectFailed, "unknown transport kind");
}

std::unique_ptr<TransportAgent> open_transport(TransportKind kind, const Endpoint& endpoint,
                                               Role role, const Options& options) {
  if (role == Role::Client) {
    switch (kind) {
      case TransportKind::Local: return local_connect(endpoint, options);
      case TransportKind::Tcp: return tcp_connect(endpoint, options);
    }
    raise(Errc::ConnectFailed, "unknown transport kind");
  }
  return std::make_unique<ServerAgent>(open_listener(kind, endpoint, options), options);
}

}  // namespace edugrid::transport
