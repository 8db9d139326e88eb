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

#include <memory>
#include <span>
#include <vector>

#include "carnotfreq/rational.hpp"

namespace cfreq {

// A point in exponential coordinates (z in the first layer, t in the second).
struct Point {
  std::vector<double> z;
  std::vector<double> t;
};

// Same, with exact coordinates.
struct RPoint {
  std::vector<Rational> z;
  std::vector<Rational> t;
};

struct Classification {
  bool is_htype = false;
  bool is_metivier = false;
  // True when the Metivier answer comes from an exact test (k <= 2); false
  // for the sampled one-sided certificate used when k > 2.
  bool metivier_exact = true;
  // Smallest singular value of J(t) over the sampled unit t; NaN when the
  // exact test was used.
  double min_singular_value = 0.0;
  int samples = 0;
};

// Number of Sobol points on the unit t-sphere for the k > 2 Metivier test.
inline constexpr int kMetivierSamples = 10000;

// Step-2 Carnot group given by its structure matrices J_l = J(eps_l).
class GroupSpec {
 public:
  static GroupSpec make(int m, int k, std::vector<RMatrix> J);
  static GroupSpec make(int m, int k, const std::vector<std::vector<std::vector<double>>>& J);
  static GroupSpec heisenberg(int n);

  int m() const { return m_; }
  int k() const { return k_; }
  int N() const { return m_ + k_; }
  int Q() const { return m_ + 2 * k_; }

  const std::vector<RMatrix>& J() const { return J_; }
  double Jd(int l, int i, int j) const { return Jd_[(l * m_ + i) * m_ + j]; }
  bool is_htype() const { return htype_; }

  Classification classify() const;

  // Normalizing constant C of the fundamental solution C / rho^{Q-2}; computed
  // once by quadrature of its defining integral and cached.
  double folland_constant() const;

  // (J(t) z)_i = sum_l t_l (J_l z)_i.
  void apply_Jt(std::span<const double> t, std::span<const double> z, std::span<double> out) const;

 private:
  struct Cache;
  int m_ = 0;
  int k_ = 0;
  std::vector<RMatrix> J_;
  std::vector<double> Jd_;
  bool htype_ = false;
  std::shared_ptr<Cache> cache_;
};

Point group_product(const GroupSpec& G, const Point& g, const Point& h);
RPoint group_product(const GroupSpec& G, const RPoint& g, const RPoint& h);
Point group_inverse(const Point& g);
RPoint group_inverse(const RPoint& g);
Point identity_point(const GroupSpec& G);
Point dilate(const GroupSpec& G, double lambda, const Point& g);
RPoint dilate(const GroupSpec& G, const Rational& lambda, const RPoint& g);
Point to_double(const RPoint& g);

// (|z|^4 + 16|t|^2)^{1/4}; requires an H-type group.
double gauge(const GroupSpec& G, const Point& g);
// |grad_H rho|^2 = (|z|^6 + 16|J(t)z|^2) / rho^6, valid on any step-2 group.
double horiz_gauge_grad_sq(const GroupSpec& G, const Point& g);
double horiz_gauge_grad_sq(const GroupSpec& G, std::span<const double> z, std::span<const double> t);
// C / rho^{Q-2}; requires an H-type group.
double fundamental_solution(const GroupSpec& G, const Point& g);

// Exact H-type test J_l^T J_l' + J_l'^T J_l = 2 delta I.
bool htype_identity_holds(int m, const std::vector<RMatrix>& J);

}  // namespace cfreq
