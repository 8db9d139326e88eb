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

#include <string>
#include <utility>
#include <vector>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/field.hpp"
#include "carnotfreq/quadrature.hpp"

namespace cfreq {

inline constexpr int kMinGridPoints = 5;
inline constexpr int kMaxGridPoints = 257;

// Nodal solution of B_alpha u = 0 on a tensor grid over a (z, t) box.
// Axes are z_1..z_m then t_1..t_k; the last axis varies fastest.
struct GridSolution {
  BaouendiSpec spec;
  std::vector<double> lo, hi;
  std::vector<int> n;
  std::vector<double> values;
  std::string boundary;  // descriptor of the Dirichlet data
  int order = 2;
  int iterations = 0;
  double residual = 0.0;  // relative residual reached by the solver

  int dims() const { return static_cast<int>(n.size()); }
  double h(int axis) const { return (hi[axis] - lo[axis]) / (n[axis] - 1); }
  double node(int axis, int i) const { return lo[axis] + i * h(axis); }
};

using Box = std::vector<std::pair<double, double>>;

// Second-order centered differences for Delta_z + |z|^{2 alpha}/4 Delta_t with
// Dirichlet data, solved by Jacobi-preconditioned conjugate gradients.
GridSolution fd_solve(const BaouendiSpec& spec, const Box& box, const std::vector<int>& grid, const ScalarFn& boundary,
                      double tol, int max_iterations = 0);

// Max over interior nodes of |stencil residual|, scaled by the max stencil
// diagonal times max |u|.
double discrete_residual(const GridSolution& sol);

// Tensor-product cubic Lagrange interpolant of the nodal values, with its
// exact gradient, wrapped as a Baouendi field.
FieldPtr grid_field(const GridSolution& sol);
double grid_interpolate(const GridSolution& sol, std::span<const double> z, std::span<const double> t);

}  // namespace cfreq
