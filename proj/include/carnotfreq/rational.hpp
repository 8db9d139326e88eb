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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace cfreq {

using Rational = mpq_class;
using RMatrix = std::vector<std::vector<Rational>>;

// Accepts "3", "-3/4" or a decimal literal such as "0.25"; decimals are
// converted exactly.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// Exact conversion of a finite double.
Rational rational_from_double(double x);

// Counter-based random stream: the value depends only on (seed, index).
std::uint64_t splitmix64(std::uint64_t x);
double uniform01(std::uint64_t seed, std::uint64_t index);

}  // namespace cfreq
