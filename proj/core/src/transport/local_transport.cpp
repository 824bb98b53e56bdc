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

#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

#include "transport/channel_base.hpp"
#include "transport/impl.hpp"

namespace edugrid::transport {

namespace {

// Shared state of one in-process connection. Side 0 is the connecting
// client, side 1 the accepted end.
struct PipeState {
  Inbox inbox[2];  // inbox[s] holds frames addressed to side s
  std::mutex mutex;
  bool open[2] = {true, true};
  std::string bus_name;
};

class LocalChannel : public ChannelBase {
 public:
  LocalChannel(std::shared_ptr<PipeState> pipe, int side, Options options)
      : ChannelBase(options), pipe_(std::move(pipe)), side_(side) {}

  ~LocalChannel() override { close(); }

  void close() override {
    suppress_failure_event();
    close_io(Errc::Disconnected, "closed locally");
  }

  std::string describe() const override {
    return "local:" + pipe_->bus_name + (side_ == 0 ? "#client" : "#server");
  }

  // Wired up after construction so peer-close can be reported to this side.
  void set_peer(std::shared_ptr<LocalChannel> peer) {
    std::lock_guard<std::mutex> lock(peer_mutex_);
    peer_ = std::move(peer);
  }

 protected:
  void deliver_body(Bytes body) override {
    {
      std::lock_guard<std::mutex> lock(pipe_->mutex);
      if (!pipe_->open[side_]) raise(Errc::Disconnected, "agent is closed");
      if (!pipe_->open[1 - side_]) raise(Errc::Disconnected, "peer is closed");
    }
    pipe_->inbox[1 - side_].push(std::move(body));
  }

  Inbox& inbox() override { return pipe_->inbox[side_]; }
  bool inbox_closed() const override { return pipe_->inbox[side_].closed(); }

  void close_io(Errc code, const std::string& detail) override {
    std::shared_ptr<LocalChannel> peer;
    {
      std::lock_guard<std::mutex> lock(pipe_->mutex);
      if (!pipe_->open[side_]) return;
      pipe_->open[side_] = false;
    }
    pipe_->inbox[side_].close(code, detail);
    {
      std::lock_guard<std::mutex> lock(peer_mutex_);
      peer = peer_.lock();
    }
    if (peer) peer->fail(Errc::Disconnected, "peer closed " + describe());
  }

 private:
  std::shared_ptr<PipeState> pipe_;
  int side_;
  std::mutex peer_mutex_;
  std::weak_ptr<LocalChannel> peer_;
};

// The accepted end has shared ownership (the client keeps a weak ref for
// failure notification), so it is handed out behind a forwarding wrapper.
class SharedChannel : public TransportAgent {
 public:
  explicit SharedChannel(std::shared_ptr<LocalChannel> inner) : inner_(std::move(inner)) {}
  ~SharedChannel() override { inner_->close(); }

  void send(const Demand& d) override { inner_->send(d); }
  void send_control(std::uint8_t opcode, const Bytes& payload) override {
    inner_->send_control(opcode, payload);
  }
  Message recv_message(int timeout_ms) override { return inner_->recv_message(timeout_ms); }
  void set_exception_handler(ExceptionHandler handler) override {
    inner_->set_exception_handler(std::move(handler));
  }
  void close() override { inner_->close(); }
  bool is_open() const override { return inner_->is_open(); }
  std::string describe() const override { return inner_->describe(); }
  void send_raw_body(const Bytes& body) override { inner_->send_raw_body(body); }

 private:
  std::shared_ptr<LocalChannel> inner_;
};

struct LocalBus {
  std::mutex mutex;
  std::condition_variable cv;
  std::deque<std::unique_ptr<TransportAgent>> pending;
  bool open = true;
  Options options;
};

// Process-wide rendezvous table of named buses.
class LocalRegistry {
 public:
  static LocalRegistry& instance() {
    static LocalRegistry registry;
    return registry;
  }

  std::shared_ptr<LocalBus> create(const std::string& name, const Options& options) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = buses_.try_emplace(name);
    if (!inserted) raise(Errc::ConnectFailed, "LOCAL bus '" + name + "' already registered");
    it->second = std::make_shared<LocalBus>();
    it->second->options = options;
    return it->second;
  }

  std::shared_ptr<LocalBus> find(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = buses_.find(name);
    if (it == buses_.end()) {
      raise(Errc::ConnectFailed, "no LOCAL bus named '" + name + "'");
    }
    return it->second;
  }

  void remove(const std::string& name) {
    std::lock_guard<std::mutex> lock(mutex_);
    buses_.erase(name);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<LocalBus>> buses_;
};

class LocalListener : public TransportListener {
 public:
  LocalListener(std::string name, std::shared_ptr<LocalBus> bus)
      : name_(std::move(name)), bus_(std::move(bus)) {}

  ~LocalListener() override { close(); }

  std::unique_ptr<TransportAgent> accept(int timeout_ms) override {
    std::unique_lock<std::mutex> lock(bus_->mutex);
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    while (bus_->pending.empty()) {
      if (!bus_->open) raise(Errc::Disconnected, "listener closed");
      if (bus_->cv.wait_until(lock, deadline) == std::cv_status::timeout &&
          bus_->pending.empty()) {
        raise(Errc::TimeoutExpired, "accept timed out on bus '" + name_ + "'");
      }
    }
    auto agent = std::move(bus_->pending.front());
    bus_->pending.pop_front();
    return agent;
  }

  Endpoint endpoint() const override { return Endpoint::local_bus(name_); }

  void close() override {
    std::deque<std::unique_ptr<TransportAgent>> orphans;
    {
      std::lock_guard<std::mutex> lock(bus_->mutex);
      if (!bus_->open) return;
      bus_->open = false;
      orphans.swap(bus_->pending);
    }
    LocalRegistry::instance().remove(name_);
    bus_->cv.notify_all();
    for (auto& agent : orphans) agent->close();
  }

  bool is_open() const override {
    std::lock_guard<std::mutex> lock(bus_->mutex);
    return bus_->open;
  }

 private:
  std::string name_;
  std::shared_ptr<LocalBus> bus_;
};

}  // namespace

std::unique_ptr<TransportListener> local_listen(const Endpoint& endpoint,
                                                const Options& options) {
  auto bus = LocalRegistry::instance().create(endpoint.host, options);
  return std::make_unique<LocalListener>(endpoint.host, std::move(bus));
}

std::unique_ptr<TransportAgent> local_connect(const Endpoint& endpoint, const Options& options) {
  auto bus = LocalRegistry::instance().find(endpoint.host);

  auto pipe = std::make_shared<PipeState>();
  pipe->bus_name = endpoint.host;
  auto client = std::make_shared<LocalChannel>(pipe, 0, options);
  auto server = std::make_shared<LocalChannel>(pipe, 1, bus->options);
  client->set_peer(server);
  server->set_peer(client);

  {
    std::lock_guard<std::mutex> lock(bus->mutex);
    if (!bus->open) raise(Errc::ConnectFailed, "LOCAL bus '" + endpoint.host + "' is closed");
    bus->pending.push_back(std::make_unique<SharedChannel>(std::move(server)));
  }
  bus->cv.notify_one();
  return std::make_unique<SharedChannel>(std::move(client));
}

}  // namespace edugrid::transport
