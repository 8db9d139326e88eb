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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/field.hpp"
#include "carnotfreq/polynomial.hpp"
#include "carnotfreq/quadrature.hpp"

namespace cfreq {

// (|z|^{2(alpha+1)} + 4 (alpha+1)^2 |t|^2)^{1/(2(alpha+1))}.
double rho_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t);
// |grad_alpha rho_alpha|^2 = |z|^{2 alpha} / rho_alpha^{2 alpha}.
double psi_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t);

// The constant A with B_alpha(|z|^{2(alpha+1)} - A |t|^2) = 0, solved from the
// symbolic identity.
Rational quadratic_harmonic_constant(const BaouendiSpec& spec);
// |z|^{2(alpha+1)} - A |t|^2, homogeneous of degree 2(alpha+1).
Polynomial solid_harmonic_quadratic(const BaouendiSpec& spec);

// r^{Q-1} sum w psi P P' over S_r.
double orthogonality_check(const Field& P, const Field& P2, double r, const SphereRule& rule);

struct ConstantEstimate {
  double value = 0.0;
  double error = 0.0;
};

// C_alpha from its defining integral over R^N (nested double-exponential
// quadrature on the radial reduction).
ConstantEstimate normalization_constant(const BaouendiSpec& spec);
// C_alpha from the flux identity int_{S_1} psi dmu = 1 / (C_alpha (Q-2)).
ConstantEstimate normalization_constant_flux(const BaouendiSpec& spec);
// Monte Carlo estimate of the defining integral.
ConstantEstimate normalization_constant_mc(const BaouendiSpec& spec, std::uint64_t samples, std::uint64_t seed);

// C_alpha / rho_alpha^{Q-2}.
double fundamental_solution_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t);

}  // namespace cfreq
