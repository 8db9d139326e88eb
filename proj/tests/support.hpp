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

// Hand-rolled deterministic generators for property tests.

#pragma once

#include <cstdint>
#include <vector>

#include "carnotfreq/errors.hpp"
#include "carnotfreq/group.hpp"
#include "carnotfreq/polynomial.hpp"

namespace gen {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * ((next() >> 11) * 0x1.0p-53); }
  cfreq::Rational rational(int max_num = 9, int max_den = 6) {
    cfreq::Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  cfreq::Point point(const cfreq::GroupSpec& G, double scale = 1.0) {
    cfreq::Point g{std::vector<double>(G.m()), std::vector<double>(G.k())};
    for (double& v : g.z) v = uniform(-scale, scale);
    for (double& v : g.t) v = uniform(-scale, scale);
    return g;
  }
  cfreq::RPoint rpoint(const cfreq::GroupSpec& G) {
    cfreq::RPoint g{std::vector<cfreq::Rational>(G.m()), std::vector<cfreq::Rational>(G.k())};
    for (auto& v : g.z) v = rational();
    for (auto& v : g.t) v = rational();
    return g;
  }
  cfreq::Polynomial polynomial(int m, int k, int max_terms = 6, int max_z = 3, int max_t = 2) {
    cfreq::Polynomial p(m, k);
    const int n = integer(1, max_terms);
    for (int i = 0; i < n; ++i) {
      cfreq::Exponents e(m + k);
      for (int j = 0; j < m; ++j) e[j] = integer(0, max_z);
      for (int j = 0; j < k; ++j) e[m + j] = integer(0, max_t);
      p.add_term(e, rational());
    }
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gen

#define EXPECT_CF_ERROR(stmt, code_)                                 \
  do {                                                              \
    try {                                                           \
      stmt;                                                         \
      ADD_FAILURE() << "expected " << cfreq::error_name(code_);     \
    } catch (const cfreq::Error& e) {                               \
      EXPECT_EQ(e.code(), code_) << e.what();                       \
    }                                                               \
  } while (0)
