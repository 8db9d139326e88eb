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

#pragma once

#include <stdexcept>
#include <string>

namespace cfreq {

enum class ErrorCode {
  Ok = 0,
  DimensionMismatch,
  NonSkewSymmetric,
  NonPositiveLambda,
  NotHType,
  OriginSingularity,
  IndexOutOfRange,
  NonIntegerAlpha,
  ResolutionTooSmall,
  InsufficientSamples,
  ZeroHeight,
  DiscrepancyNonzero,
  ZeroDenominator,
  NoConvergence,
  BadGrid,
  ParseError,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Test harness hook: deliberately corrupt a computation so that the
// verification battery can prove it notices.
enum class Fault { None, PsiSign };
void set_fault(Fault f);
Fault current_fault();

}  // namespace cfreq
