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

#include "carnotfreq/fd_solver.hpp"
#include "carnotfreq/group.hpp"
#include "carnotfreq/polynomial.hpp"

namespace cfreq::fixtures {

// H-type group with m = 4, k = 2, Q = 8.
GroupSpec htype_4_2();
// Metivier group with m = 4, k = 1 whose J has singular values 1 and 2; not H-type.
GroupSpec metivier_4_1();

// On H^1: x, t, x^2 - y^2, the quartic cylindrical harmonic |z|^4 - 32 t^2,
// and x + y t - x |z|^2 / 8, a harmonic with a nonvanishing discrepancy term
// in the first variation.
Polynomial h1_x();
Polynomial h1_t();
Polynomial h1_x2_minus_y2();
Polynomial h1_cylindrical_quartic();
Polynomial h1_mixed_cubic();

// Baouendi mixed fixture: alpha = 2, m = k = 1, Dirichlet data z + P where P
// is the quadratic solid harmonic, solved on [-1,1] x [-0.2,0.2].
struct BaouendiMixed {
  BaouendiSpec spec;
  Polynomial P;
  Polynomial boundary;
  GridSolution solution;
};
BaouendiMixed baouendi_mixed(int grid = 129, double tol = 1e-12);

}  // namespace cfreq::fixtures
