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

#include <memory>

#include "edugrid/transport/transport.hpp"

namespace edugrid::transport {

std::unique_ptr<TransportAgent> local_connect(const Endpoint& endpoint, const Options& options);
std::unique_ptr<TransportListener> local_listen(const Endpoint& endpoint, const Options& options);

std::unique_ptr<TransportAgent> tcp_connect(const Endpoint& endpoint, const Options& options);
std::unique_ptr<TransportListener> tcp_listen(const Endpoint& endpoint, const Options& options);

}  // namespace edugrid::transport
