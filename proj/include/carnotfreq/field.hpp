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

#include <array>
#include <functional>
#include <memory>
#include <span>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/group.hpp"
#include "carnotfreq/polynomial.hpp"
#include "carnotfreq/quadrature.hpp"

namespace cfreq {

inline constexpr int kMaxHorizontal = 16;

// Pointwise data a frequency functional needs: the value, the horizontal
// gradient (X_i u for groups, grad_alpha u for Baouendi operators), the Euler
// derivative and the discrepancy numerator sum_l t_l Theta_l u.
struct FieldSample {
  double u = 0.0;
  double zu = 0.0;
  double disc = 0.0;
  int n = 0;
  std::array<double, kMaxHorizontal> grad{};

  double grad_sq() const {
    double s = 0;
    for (int i = 0; i < n; ++i) s += grad[i] * grad[i];
    return s;
  }
};

// Euclidean gradient callback in exponential coordinates.
using GradFn = std::function<void(std::span<const double> z, std::span<const double> t, std::span<double> gz,
                                  std::span<double> gt)>;

class Field {
 public:
  virtual ~Field() = default;
  virtual int m() const = 0;
  virtual int k() const = 0;
  virtual double value(std::span<const double> z, std::span<const double> t) const = 0;
  virtual FieldSample sample(std::span<const double> z, std::span<const double> t) const = 0;
  // True when the function is a polynomial handled symbolically.
  virtual bool symbolic() const { return false; }
};

using FieldPtr = std::shared_ptr<const Field>;

// Group fields. The center g0 is applied by left translation: the field
// represents u o L_{g0}.
FieldPtr group_poly_field(const GroupSpec& G, const Polynomial& p);
FieldPtr group_poly_field(const GroupSpec& G, const Polynomial& p, const RPoint& center);
FieldPtr group_fn_field(const GroupSpec& G, ScalarFn u, GradFn grad = {});
FieldPtr group_fn_field(const GroupSpec& G, ScalarFn u, const Point& center);

FieldPtr baouendi_poly_field(const BaouendiSpec& spec, const Polynomial& p);
FieldPtr baouendi_fn_field(const BaouendiSpec& spec, ScalarFn u, GradFn grad = {});

// a - b.
FieldPtr difference_field(FieldPtr a, FieldPtr b);
// u o delta_lambda for a field living on geometry geo.
FieldPtr dilated_field(FieldPtr u, double lambda, const GaugeGeometry& geo);

// Central-difference Euclidean gradient, step 1e-5 (1 + |g|).
void fd_gradient(const ScalarFn& u, std::span<const double> z, std::span<const double> t, std::span<double> gz,
                 std::span<double> gt);

}  // namespace cfreq
