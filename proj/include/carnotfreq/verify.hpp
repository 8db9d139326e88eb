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

#include <cstdint>
#include <string>
#include <vector>

namespace cfreq {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured defect (residual, error, ...)
  double tolerance = 0.0;  // pass threshold for value
  std::string detail;
};

struct VerifyOptions {
  int resolution = 32;
  std::uint64_t mc_samples = 200000;
  std::uint64_t seed = 1;
  int steps = 32;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

VerifyReport run_verification(const VerifyOptions& opts);
std::string report_to_json(const VerifyReport& report);
std::string report_to_text(const VerifyReport& report);

}  // namespace cfreq
