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

#include <vector>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/group.hpp"
#include "carnotfreq/polynomial.hpp"

namespace cfreq {

// Indices are zero-based: X_0..X_{m-1}, Theta_0..Theta_{k-1}.
Polynomial apply_X(const GroupSpec& G, int i, const Polynomial& p);
Polynomial apply_theta(const GroupSpec& G, int l, const Polynomial& p);
Polynomial sublaplacian(const GroupSpec& G, const Polynomial& p);
Polynomial euler_Z(const GroupSpec& G, const Polynomial& p);
Polynomial horizontal_grad_sq(const GroupSpec& G, const Polynomial& p);

// Divergence of the coefficient field of Z, as a polynomial.
Polynomial z_field_divergence(const GroupSpec& G);
// Euclidean divergence of the vector field p * Z.
Polynomial divergence_pZ(const GroupSpec& G, const Polynomial& p);

// Numerator sum_l t_l Theta_l p of the discrepancy; requires H-type.
Polynomial discrepancy_poly(const GroupSpec& G, const Polynomial& p);

// Basis of the delta-homogeneous harmonic polynomials of degree kappa,
// integer-cleared, leading coefficient positive, deterministic order.
std::vector<Polynomial> harmonic_basis(const GroupSpec& G, int kappa);

// p o L_{g0}, i.e. g -> p(g0 * g), computed exactly.
Polynomial compose_left_translation(const GroupSpec& G, const RPoint& g0, const Polynomial& p);
// p o delta_lambda.
Polynomial compose_dilation(const GroupSpec& G, const Rational& lambda, const Polynomial& p);

// sum_i z_i^2 and sum_l t_l^2.
Polynomial z_norm_sq(int m, int k);
Polynomial t_norm_sq(int m, int k);
// Polynomial of (J_l z)_i.
Polynomial Jz_component(const GroupSpec& G, int l, int i);

// B_alpha p for a positive integer alpha.
Polynomial baouendi_apply(const BaouendiSpec& spec, const Polynomial& p);
// Z_alpha p = sum z_i d_{z_i} p + (alpha+1) sum t_j d_{t_j} p, integer alpha.
Polynomial z_alpha_apply(const BaouendiSpec& spec, const Polynomial& p);

}  // namespace cfreq
