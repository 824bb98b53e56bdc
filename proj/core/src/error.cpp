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

#include "edugrid/error.hpp"

namespace edugrid {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidDestination: return "InvalidDestination";
    case Errc::IllegalState: return "IllegalState";
    case Errc::ClockSkew: return "ClockSkew";
    case Errc::ConnectFailed: return "ConnectFailed";
    case Errc::Disconnected: return "Disconnected";
    case Errc::FrameTooLarge: return "FrameTooLarge";
    case Errc::TimeoutExpired: return "TimeoutExpired";
    case Errc::MalformedFrame: return "MalformedFrame";
    case Errc::UnknownDemand: return "UnknownDemand";
    case Errc::ResultConflict: return "ResultConflict";
    case Errc::UnknownSubscription: return "UnknownSubscription";
    case Errc::MissingConfig: return "MissingConfig";
    case Errc::IllegalLifecycle: return "IllegalLifecycle";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::MalformedWav: return "MalformedWav";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidCutoff: return "InvalidCutoff";
    case Errc::SampleTooShort: return "SampleTooShort";
    case Errc::EmptyModel: return "EmptyModel";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyJob: return "EmptyJob";
    case Errc::JobStalled: return "JobStalled";
    case Errc::StageFailure: return "StageFailure";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::MalformedLine: return "MalformedLine";
  }
  return "UnknownError";
}

}  // namespace edugrid
