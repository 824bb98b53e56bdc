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
#include <string>

namespace edugrid::diag {

enum class Level { Info, Warn, Error };

// Emit a diagnostic line. The rule is: no failure is ever swallowed.
// Every line reaches the registered sink (if any); Warn and Error also go
// to stderr unless the threshold is lowered to Info via set_verbose(true).
void log(Level level, const std::string& component, const std::string& message);

void set_verbose(bool verbose);

// Test hook: capture every line in addition to (not instead of) stderr
// handling. Pass nullptr to remove.
using Sink = std::function<void(Level, const std::string&, const std::string&)>;
void set_sink(Sink sink);

}  // namespace edugrid::diag
