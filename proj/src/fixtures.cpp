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

#include "carnotfreq/fixtures.hpp"

#include "carnotfreq/baouendi.hpp"
#include "carnotfreq/operators.hpp"

namespace cfreq::fixtures {

namespace {

RMatrix int_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  RMatrix M;
  for (auto r : rows) {
    std::vector<Rational> row;
    for (int v : r) row.emplace_back(v);
    M.push_back(std::move(row));
  }
  return M;
}

}  // namespace

GroupSpec htype_4_2() {
  RMatrix J1 = int_matrix({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  RMatrix J2 = int_matrix({{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}});
  return GroupSpec::make(4, 2, std::vector<RMatrix>{J1, J2});
}

GroupSpec metivier_4_1() {
  RMatrix J = int_matrix({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -2}, {0, 0, 2, 0}});
  return GroupSpec::make(4, 1, std::vector<RMatrix>{J});
}

Polynomial h1_x() { return Polynomial::z(2, 1, 0); }

Polynomial h1_t() { return Polynomial::t(2, 1, 0); }

Polynomial h1_x2_minus_y2() {
  Polynomial x = Polynomial::z(2, 1, 0), y = Polynomial::z(2, 1, 1);
  return x * x - y * y;
}

Polynomial h1_cylindrical_quartic() {
  return z_norm_sq(2, 1).pow(2) - t_norm_sq(2, 1) * Rational(32);
}

Polynomial h1_mixed_cubic() {
  Polynomial x = Polynomial::z(2, 1, 0), y = Polynomial::z(2, 1, 1), t = Polynomial::t(2, 1, 0);
  return x + y * t - x * z_norm_sq(2, 1) * Rational(1, 8);
}

BaouendiMixed baouendi_mixed(int grid, double tol) {
  BaouendiMixed f;
  f.spec = BaouendiSpec::make(1, 1, 2.0);
  f.P = solid_harmonic_quadratic(f.spec);
  f.boundary = Polynomial::z(1, 1, 0) + f.P;
  CompiledPoly b(f.boundary);
  f.solution = fd_solve(f.spec, {{-1.0, 1.0}, {-0.2, 0.2}}, {grid, grid},
                        [&](std::span<const double> z, std::span<const double> t) { return b(z, t); }, tol);
  f.solution.boundary = "z + P";
  return f;
}

}  // namespace cfreq::fixtures
