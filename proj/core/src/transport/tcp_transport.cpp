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

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "transport/channel_base.hpp"
#include "transport/impl.hpp"

namespace edugrid::transport {

namespace {

std::string errno_text(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

bool read_exact(int fd, std::uint8_t* out, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::read(fd, out + got, n - got);
    if (r == 0) return false;  // EOF
    if (r < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

bool send_all(int fd, const std::uint8_t* data, std::size_t n) {
  std::size_t sent = 0;
  while (sent < n) {
    ssize_t r = ::send(fd, data + sent, n - sent, MSG_NOSIGNAL);
    if (r < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    sent += static_cast<std::size_t>(r);
  }
  return true;
}

class TcpChannel : public ChannelBase {
 public:
  TcpChannel(int fd, std::string description, Options options)
      : ChannelBase(options), fd_(fd), description_(std::move(description)) {
    reader_ = std::thread([this] { reader_main(); });
  }

  ~TcpChannel() override {
    close();
    if (reader_.joinable()) reader_.join();
    ::close(fd_);
  }

  void close() override {
    suppress_failure_event();
    close_io(Errc::Disconnected, "closed locally");
  }

  std::string describe() const override { return description_; }

 protected:
  void deliver_body(Bytes body) override {
    std::lock_guard<std::mutex> lock(send_mutex_);
    if (inbox_.closed()) raise(Errc::Disconnected, "connection is closed");
    std::uint8_t header[kFrameHeaderBytes];
    std::uint32_t len = static_cast<std::uint32_t>(body.size());
    header[0] = static_cast<std::uint8_t>(len >> 24);
    header[1] = static_cast<std::uint8_t>(len >> 16);
    header[2] = static_cast<std::uint8_t>(len >> 8);
    header[3] = static_cast<std::uint8_t>(len);
    if (!send_all(fd_, header, sizeof header) || !send_all(fd_, body.data(), body.size())) {
      std::string detail = errno_text("send failed");
      suppress_failure_event();  // the caller gets the exception directly
      close_io(Errc::Disconnected, detail);
      raise(Errc::Disconnected, detail);
    }
  }

  Inbox& inbox() override { return inbox_; }
  bool inbox_closed() const override { return inbox_.closed(); }

  void close_io(Errc code, const std::string& detail) override {
    bool expected = false;
    if (shutdown_done_.compare_exchange_strong(expected, true)) {
      ::shutdown(fd_, SHUT_RDWR);
    }
    inbox_.close(code, detail);
  }

 private:
  void reader_main() {
    while (true) {
      std::uint8_t header[kFrameHeaderBytes];
      if (!read_exact(fd_, header, sizeof header)) {
        fail(Errc::Disconnected, "peer closed " + description_);
        return;
      }
      std::uint32_t len = (static_cast<std::uint32_t>(header[0]) << 24) |
                          (static_cast<std::uint32_t>(header[1]) << 16) |
                          (static_cast<std::uint32_t>(header[2]) << 8) |
                          static_cast<std::uint32_t>(header[3]);
      if (len == 0 || len > options_.max_frame_bytes) {
        fail(Errc::MalformedFrame,
             "frame length " + std::to_string(len) + " outside (0, " +
                 std::to_string(options_.max_frame_bytes) + "]");
        return;
      }
      Bytes body(len);
      if (!read_exact(fd_, body.data(), len)) {
        fail(Errc::Disconnected, "connection lost mid-frame on " + description_);
        return;
      }
      inbox_.push(std::move(body));
    }
  }

  int fd_;
  std::string description_;
  Inbox inbox_;
  std::mutex send_mutex_;
  std::atomic<bool> shutdown_done_{false};
  std::thread reader_;
};

std::string peer_description(int fd) {
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  char host[NI_MAXHOST] = "?";
  char service[NI_MAXSERV] = "?";
  if (::getpeername(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0) {
    ::getnameinfo(reinterpret_cast<sockaddr*>(&addr), len, host, sizeof host, service,
                  sizeof service, NI_NUMERICHOST | NI_NUMERICSERV);
  }
  return std::string("tcp:") + host + ":" + service;
}

class TcpListener : public TransportListener {
 public:
  TcpListener(int fd, Endpoint endpoint, Options options)
      : fd_(fd), endpoint_(std::move(endpoint)), options_(options) {}

  ~TcpListener() override {
    close();
    ::close(fd_);
  }

  std::unique_ptr<TransportAgent> accept(int timeout_ms) override {
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    while (true) {
      if (closed_.load()) raise(Errc::Disconnected, "listener closed");
      // Short poll slices so close() is observed promptly.
      auto now = std::chrono::steady_clock::now();
      int remaining = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
      if (remaining < 0) remaining = 0;
      pollfd pfd{fd_, POLLIN, 0};
      int rc = ::poll(&pfd, 1, std::min(remaining, 100));
      if (rc < 0) {
        if (errno == EINTR) continue;
        raise(Errc::ConnectFailed, errno_text("poll on listener"));
      }
      if (rc > 0) {
        int client = ::accept(fd_, nullptr, nullptr);
        if (client < 0) {
          if (errno == EINTR || errno == ECONNABORTED) continue;
          raise(Errc::ConnectFailed, errno_text("accept"));
        }
        return std::make_unique<TcpChannel>(client, peer_description(client), options_);
      }
      if (remaining == 0) raise(Errc::TimeoutExpired, "accept timed out");
    }
  }

  Endpoint endpoint() const override { return endpoint_; }

  void close() override { closed_.store(true); }

  bool is_open() const override { return !closed_.load(); }

 private:
  int fd_;
  Endpoint endpoint_;
  Options options_;
  std::atomic<bool> closed_{false};
};

struct AddrInfoHolder {
  addrinfo* info = nullptr;
  ~AddrInfoHolder() {
    if (info) ::freeaddrinfo(info);
  }
};

}  // namespace

std::unique_ptr<TransportListener> tcp_listen(const Endpoint& endpoint, const Options& options) {
  AddrInfoHolder res;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  const std::string port = std::to_string(endpoint.port);
  int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &res.info);
  if (rc != 0) {
    raise(Errc::ConnectFailed, "resolve " + endpoint.to_string() + ": " + gai_strerror(rc));
  }

  std::string last_error = "no usable address";
  for (addrinfo* ai = res.info; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = errno_text("socket");
      continue;
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) != 0 || ::listen(fd, 64) != 0) {
      last_error = errno_text("bind/listen");
      ::close(fd);
      continue;
    }
    sockaddr_storage bound{};
    socklen_t len = sizeof bound;
    std::uint16_t bound_port = endpoint.port;
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
      if (bound.ss_family == AF_INET) {
        bound_port = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
      } else if (bound.ss_family == AF_INET6) {
        bound_port = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
      }
    }
    return std::make_unique<TcpListener>(fd, Endpoint::tcp(endpoint.host, bound_port), options);
  }
  raise(Errc::ConnectFailed, "bind " + endpoint.to_string() + ": " + last_error);
}

std::unique_ptr<TransportAgent> tcp_connect(const Endpoint& endpoint, const Options& options) {
  AddrInfoHolder res;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  const std::string port = std::to_string(endpoint.port);
  int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &res.info);
  if (rc != 0) {
    raise(Errc::ConnectFailed, "resolve " + endpoint.to_string() + ": " + gai_strerror(rc));
  }

  std::string last_error = "no usable address";
  for (addrinfo* ai = res.info; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = errno_text("socket");
      continue;
    }
    int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);

    bool connected = false;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      connected = true;
    } else if (errno == EINPROGRESS) {
      pollfd pfd{fd, POLLOUT, 0};
      int prc = ::poll(&pfd, 1, options.connect_timeout_ms);
      if (prc > 0) {
        int err = 0;
        socklen_t errlen = sizeof err;
        ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &errlen);
        if (err == 0) {
          connected = true;
        } else {
          errno = err;
          last_error = errno_text("connect");
        }
      } else {
        last_error = prc == 0 ? "connect timed out" : errno_text("poll");
      }
    } else {
      last_error = errno_text("connect");
    }

    if (!connected) {
      ::close(fd);
      continue;
    }
    ::fcntl(fd, F_SETFL, flags);
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return std::make_unique<TcpChannel>(fd, "tcp:" + endpoint.to_string(), options);
  }
  raise(Errc::ConnectFailed, "connect " + endpoint.to_string() + ": " + last_error);
}

}  // namespace edugrid::transport
