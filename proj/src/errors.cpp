// Copyright 2026 The carnotfreq Authors
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

#include "carnotfreq/errors.hpp"

#include <atomic>

namespace cfreq {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSkewSymmetric: return "NonSkewSymmetric";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::NotHType: return "NotHType";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonIntegerAlpha: return "NonIntegerAlpha";
    case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ZeroHeight: return "ZeroHeight";
    case ErrorCode::DiscrepancyNonzero: return "DiscrepancyNonzero";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_name(code)) + ": " + what);
}

namespace {
std::atomic<Fault> g_fault{Fault::None};
}

void set_fault(Fault f) { g_fault.store(f); }
Fault current_fault() { return g_fault.load(); }

}  // namespace cfreq
