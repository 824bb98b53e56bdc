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

#include <functional>
#include <memory>

#include "edugrid/transport/endpoint.hpp"
#include "edugrid/transport/message.hpp"

namespace edugrid::transport {

// Fired at most once per asynchronous transport failure (peer disconnect,
// malformed frame). Runs on the agent's internal service context and must
// not block. If no handler is registered the failure goes to the
// diagnostic stream instead; it is never dropped.
using ExceptionHandler = std::function<void(Errc, const std::string&)>;

struct Options {
  std::size_t max_frame_bytes = kDefaultMaxFrameBytes;
  int connect_timeout_ms = 2000;
};

// One duplex demand channel between two peers. Safe for one concurrent
// sender plus one concurrent receiver; sends on a single agent are
// serialized internally so frames never interleave.
class TransportAgent {
 public:
  virtual ~TransportAgent() = default;

  virtual void send(const Demand& d) = 0;
  virtual void send_control(std::uint8_t opcode, const Bytes& payload = {}) = 0;

  // Next queued message in FIFO order; waits up to timeout_ms.
  virtual Message recv_message(int timeout_ms) = 0;

  // Demand-only receive. A control frame on a demand conversation is a
  // protocol violation and reads as MalformedFrame.
  Demand recv(int timeout_ms);

  virtual void set_exception_handler(ExceptionHandler handler) = 0;

  virtual void close() = 0;
  virtual bool is_open() const = 0;

  // Bound port of a SERVER agent on TCP (0 elsewhere).
  virtual std::uint16_t bound_port() const { return 0; }

  virtual std::string describe() const = 0;

  // Queues raw body bytes to the peer, skipping message encoding. This is
  // the fault-injection hook the protocol tests drive garbage through.
  virtual void send_raw_body(const Bytes& body) = 0;
};

// Server-side accept surface for services that host many concurrent
// clients (the demand store, the node control port). Each accepted
// connection is its own TransportAgent.
class TransportListener {
 public:
  virtual ~TransportListener() = default;

  virtual std::unique_ptr<TransportAgent> accept(int timeout_ms) = 0;
  virtual Endpoint endpoint() const = 0;  // with the bound port resolved
  virtual void close() = 0;
  virtual bool is_open() const = 0;
};

// Opens one side of a two-peer channel. A SERVER agent binds (TCP) or
// registers the bus (LOCAL) and adopts the first connection as its peer;
// connections beyond the first are refused. Multi-client services use
// open_listener instead.
std::unique_ptr<TransportAgent> open_transport(TransportKind kind, const Endpoint& endpoint,
                                               Role role, const Options& options = {});

std::unique_ptr<TransportListener> open_listener(TransportKind kind, const Endpoint& endpoint,
                                                 const Options& options = {});

}  // namespace edugrid::transport
