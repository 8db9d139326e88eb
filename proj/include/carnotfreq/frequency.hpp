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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "carnotfreq/field.hpp"
#include "carnotfreq/polynomial.hpp"
#include "carnotfreq/quadrature.hpp"

namespace cfreq {

double dirichlet(const Field& u, double r, const SphereRule& rule, int radial_panels = kDefaultRadialPanels);
double height(const Field& u, double r, const SphereRule& rule);
// r D / H; throws ZeroHeight when H is negligible, i.e. u vanishes on S_r.
double frequency(const Field& u, double r, const SphereRule& rule, int radial_panels = kDefaultRadialPanels);
// int_{S_r} u (Zu / r) psi; equals D(r) for harmonic u.
double dirichlet_surface_form(const Field& u, double r, const SphereRule& rule);

// D / r^{Q-2+2 kappa} - kappa H / r^{Q-1+2 kappa}.
double weiss(const Field& u, double kappa, double r, const SphereRule& rule,
             int radial_panels = kDefaultRadialPanels);
// 2 r^{-(Q+2 kappa)} int_{S_r} (Zu - kappa u)^2 psi.
double weiss_derivative_rhs(const Field& u, double kappa, double r, const SphereRule& rule);
// r^{-(Q-1+2 kappa)} int_{S_r} (u - P)^2 psi, with u - P passed as one field.
double monneau(const Field& u_minus_p, double kappa, double r, const SphereRule& rule);
// Group version: both polynomials must have vanishing discrepancy.
double monneau(const GroupSpec& G, const Polynomial& u, const Polynomial& P, double kappa, double r,
               const SphereRule& rule);

double doubling_ratio(const Field& u, double r, const SphereRule& rule, int radial_panels = kDefaultRadialPanels);
// L2 norm of E_u = 4 disc / rho^3 over S_r in the polar measure.
double discrepancy_norm(const Field& u, double r, const SphereRule& rule);
// (int_{S_r} (Zu - kappa u)^2 psi)^{1/2}.
double homogeneity_defect(const Field& u, double kappa, double r, const SphereRule& rule);

// Five-point central difference of f at r in the variable log r.
inline constexpr double kLogStep = 1e-2;
template <class F>
double log_derivative(F&& f, double r, double eta = kLogStep) {
  double fm2 = f(r * std::exp(-2 * eta)), fm1 = f(r * std::exp(-eta));
  double fp1 = f(r * std::exp(eta)), fp2 = f(r * std::exp(2 * eta));
  return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * eta * r);
}

struct IdentityResiduals {
  std::vector<double> radii;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> residual;
  double max_residual() const;
};

struct VariationResiduals {
  std::vector<double> radii;
  std::vector<double> lhs;
  std::vector<double> full_rhs;
  std::vector<double> truncated_rhs;
  std::vector<double> full_residual;
  std::vector<double> truncated_residual;
  double max_full() const;
  double max_truncated() const;
};

double relative_residual(double lhs, double rhs);

// H'(r) against (Q-1) H / r + 2 D.
IdentityResiduals check_H_identity(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                                   int radial_panels = kDefaultRadialPanels);
// D'(r) against (Q-2) D / r + 2 int (Zu/r)^2 psi + 2 int (Zu/r) E_u, and the
// truncated form without the last term.
VariationResiduals check_D_variation(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                                     int radial_panels = kDefaultRadialPanels);
// dW/dr by finite differences against weiss_derivative_rhs.
IdentityResiduals check_weiss_derivative(const Field& u, double kappa, const std::vector<double>& radii,
                                         const SphereRule& rule, int radial_panels = kDefaultRadialPanels);
// dM/dr by finite differences against (2/r) W(u).
IdentityResiduals check_monneau_derivative(const Field& u, const Field& u_minus_p, double kappa,
                                           const std::vector<double>& radii, const SphereRule& rule,
                                           int radial_panels = kDefaultRadialPanels);

// r I / H for u = exp(-rho^{-eps}), where I is the surface form of D.
double frequency_radial_exponential(const GroupSpec& G, double eps, double r, const SphereRule& rule);

std::vector<double> geometric_radii(double rmin, double rmax, int steps);

// Estimate of N(u, 0+) as N at the smallest trusted radius; snapped to the
// nearest integer when within snap_tol of it.
struct KappaEstimate {
  double raw = 0.0;
  double kappa = 0.0;
  bool snapped = false;
};
KappaEstimate estimate_kappa(const Field& u, double r_min, const SphereRule& rule, double snap_tol = 1e-3,
                             int radial_panels = kDefaultRadialPanels);

struct CurveOptions {
  std::optional<double> kappa;
  FieldPtr u_minus_p;  // enables the Monneau column
  int radial_panels = kDefaultRadialPanels;
};

struct FrequencyCurve {
  std::vector<double> r, D, H, N, W, M, disc;
  int zero_height = 0;  // radii where H vanished
  std::string description;
};

FrequencyCurve frequency_curve(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                               const CurveOptions& opts = {});

}  // namespace cfreq
