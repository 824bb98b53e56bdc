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

#include "edugrid/diag.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace edugrid::diag {

namespace {

std::mutex g_mutex;
Sink g_sink;
std::atomic<bool> g_verbose{false};

const char* level_tag(Level level) {
  switch (level) {
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
  }
  return "?";
}

}  // namespace

void log(Level level, const std::string& component, const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (g_sink) g_sink(level, component, message);
  if (level != Level::Info || g_verbose.load()) {
    std::cerr << "[edugrid:" << level_tag(level) << "] " << component << ": " << message
              << std::endl;
  }
}

void set_verbose(bool verbose) { g_verbose.store(verbose); }

void set_sink(Sink sink) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_sink = std::move(sink);
}

}  // namespace edugrid::diag
