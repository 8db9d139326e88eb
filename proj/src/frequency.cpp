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

#include "carnotfreq/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carnotfreq/errors.hpp"
#include "carnotfreq/operators.hpp"

namespace cfreq {

namespace {

void check_field(const Field& u, const SphereRule& rule) {
  if (u.m() != rule.geo.m || u.k() != rule.geo.k)
    fail(ErrorCode::DimensionMismatch, "field and quadrature rule live on different spaces");
}

struct Sums {
  double psi_uu = 0;    // sum w psi u^2
  double psi_uzu = 0;   // sum w psi u Zu
  double psi_zuzu = 0;  // sum w psi (Zu)^2
  double zu_disc = 0;   // sum w Zu disc
  double disc2 = 0;     // sum w disc^2
  double psi = 0;       // sum w psi
  double sup_u2 = 0;
};

Sums surface_sums(const Field& u, double r, const SphereRule& rule) {
  check_field(u, rule);
  std::vector<double> z(rule.geo.m), t(rule.geo.k);
  Sums s;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    dilated_node(rule, i, r, z, t);
    FieldSample f = u.sample(z, t);
    const double w = rule.w[i], wp = w * rule.psi[i];
    s.psi_uu += wp * f.u * f.u;
    s.psi_uzu += wp * f.u * f.zu;
    s.psi_zuzu += wp * f.zu * f.zu;
    s.zu_disc += w * f.zu * f.disc;
    s.disc2 += w * f.disc * f.disc;
    s.psi += wp;
    s.sup_u2 = std::max(s.sup_u2, f.u * f.u);
  }
  return s;
}

double kappa_defect_sum(const Field& u, double kappa, double r, const SphereRule& rule) {
  check_field(u, rule);
  std::vector<double> z(rule.geo.m), t(rule.geo.k);
  double s = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    dilated_node(rule, i, r, z, t);
    FieldSample f = u.sample(z, t);
    double d = f.zu - kappa * f.u;
    s += rule.w[i] * rule.psi[i] * d * d;
  }
  return s;
}

bool height_negligible(const Sums& s, double r, double Q) {
  const double H = std::pow(r, Q - 1) * s.psi_uu;
  return H <= 1e-14 * s.sup_u2 * std::pow(r, Q - 1) * s.psi;
}

}  // namespace

double dirichlet(const Field& u, double r, const SphereRule& rule, int radial_panels) {
  check_field(u, rule);
  std::vector<double> s, ws;
  radial_rule(r, radial_panels, s, ws);
  std::vector<double> z(rule.geo.m), t(rule.geo.k);
  const double Q = rule.geo.Q();
  double total = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    double shell = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      dilated_node(rule, i, s[q], z, t);
      shell += rule.w[i] * u.sample(z, t).grad_sq();
    }
    total += ws[q] * std::pow(s[q], Q - 1) * shell;
  }
  return total;
}

double height(const Field& u, double r, const SphereRule& rule) {
  return std::pow(r, rule.geo.Q() - 1) * surface_sums(u, r, rule).psi_uu;
}

double frequency(const Field& u, double r, const SphereRule& rule, int radial_panels) {
  Sums s = surface_sums(u, r, rule);
  const double Q = rule.geo.Q();
  if (height_negligible(s, r, Q))
    fail(ErrorCode::ZeroHeight, "H(r) vanishes: the function is identically zero on the ball");
  const double H = std::pow(r, Q - 1) * s.psi_uu;
  return r * dirichlet(u, r, rule, radial_panels) / H;
}

double dirichlet_surface_form(const Field& u, double r, const SphereRule& rule) {
  return std::pow(r, rule.geo.Q() - 1) * surface_sums(u, r, rule).psi_uzu / r;
}

double weiss(const Field& u, double kappa, double r, const SphereRule& rule, int radial_panels) {
  const double Q = rule.geo.Q();
  const double D = dirichlet(u, r, rule, radial_panels);
  const double H = height(u, r, rule);
  return D / std::pow(r, Q - 2 + 2 * kappa) - kappa * H / std::pow(r, Q - 1 + 2 * kappa);
}

double weiss_derivative_rhs(const Field& u, double kappa, double r, const SphereRule& rule) {
  const double Q = rule.geo.Q();
  return 2 * std::pow(r, -(Q + 2 * kappa)) * std::pow(r, Q - 1) * kappa_defect_sum(u, kappa, r, rule);
}

double monneau(const Field& u_minus_p, double kappa, double r, const SphereRule& rule) {
  const double Q = rule.geo.Q();
  return std::pow(r, -(Q - 1 + 2 * kappa)) * height(u_minus_p, r, rule);
}

double monneau(const GroupSpec& G, const Polynomial& u, const Polynomial& P, double kappa, double r,
               const SphereRule& rule) {
  if (!discrepancy_poly(G, u).is_zero() || !discrepancy_poly(G, P).is_zero())
    fail(ErrorCode::DiscrepancyNonzero, "Monneau functional on a group needs vanishing discrepancy of u and P");
  auto diff = group_poly_field(G, u - P);
  return monneau(*diff, kappa, r, rule);
}

double doubling_ratio(const Field& u, double r, const SphereRule& rule, int radial_panels) {
  check_field(u, rule);
  auto sq = [&](std::span<const double> z, std::span<const double> t) {
    double v = u.value(z, t);
    return v * v;
  };
  const double den = volume_integral(sq, r, rule, radial_panels);
  if (!(den > 0)) fail(ErrorCode::ZeroDenominator, "integral of u^2 over B_r vanishes");
  return volume_integral(sq, 2 * r, rule, radial_panels) / den;
}

double discrepancy_norm(const Field& u, double r, const SphereRule& rule) {
  const double Q = rule.geo.Q();
  const double scale = 4.0 / (r * r * r);
  return std::sqrt(std::pow(r, Q - 1) * surface_sums(u, r, rule).disc2) * scale;
}

double homogeneity_defect(const Field& u, double kappa, double r, const SphereRule& rule) {
  return std::sqrt(std::pow(r, rule.geo.Q() - 1) * kappa_defect_sum(u, kappa, r, rule));
}

double relative_residual(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

double IdentityResiduals::max_residual() const {
  double m = 0;
  for (double v : residual) m = std::max(m, v);
  return m;
}

double VariationResiduals::max_full() const {
  double m = 0;
  for (double v : full_residual) m = std::max(m, v);
  return m;
}

double VariationResiduals::max_truncated() const {
  double m = 0;
  for (double v : truncated_residual) m = std::max(m, v);
  return m;
}

IdentityResiduals check_H_identity(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                                   int radial_panels) {
  IdentityResiduals out;
  const double Q = rule.geo.Q();
  for (double r : radii) {
    double lhs = log_derivative([&](double s) { return height(u, s, rule); }, r);
    double rhs = (Q - 1) / r * height(u, r, rule) + 2 * dirichlet(u, r, rule, radial_panels);
    out.radii.push_back(r);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.residual.push_back(relative_residual(lhs, rhs));
  }
  return out;
}

VariationResiduals check_D_variation(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                                     int radial_panels) {
  VariationResiduals out;
  const double Q = rule.geo.Q();
  for (double r : radii) {
    double lhs = log_derivative([&](double s) { return dirichlet(u, s, rule, radial_panels); }, r);
    Sums s = surface_sums(u, r, rule);
    const double rq = std::pow(r, Q - 1);
    double base = (Q - 2) / r * dirichlet(u, r, rule, radial_panels) + 2 * rq * s.psi_zuzu / (r * r);
    double eterm = 2 * rq * s.zu_disc / r * 4.0 / (r * r * r);
    out.radii.push_back(r);
    out.lhs.push_back(lhs);
    out.full_rhs.push_back(base + eterm);
    out.truncated_rhs.push_back(base);
    out.full_residual.push_back(relative_residual(lhs, base + eterm));
    out.truncated_residual.push_back(relative_residual(lhs, base));
  }
  return out;
}

IdentityResiduals check_weiss_derivative(const Field& u, double kappa, const std::vector<double>& radii,
                                         const SphereRule& rule, int radial_panels) {
  IdentityResiduals out;
  for (double r : radii) {
    double lhs = log_derivative([&](double s) { return weiss(u, kappa, s, rule, radial_panels); }, r);
    double rhs = weiss_derivative_rhs(u, kappa, r, rule);
    out.radii.push_back(r);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.residual.push_back(relative_residual(lhs, rhs));
  }
  return out;
}

IdentityResiduals check_monneau_derivative(const Field& u, const Field& u_minus_p, double kappa,
                                           const std::vector<double>& radii, const SphereRule& rule,
                                           int radial_panels) {
  IdentityResiduals out;
  for (double r : radii) {
    double lhs = log_derivative([&](double s) { return monneau(u_minus_p, kappa, s, rule); }, r);
    double rhs = 2 / r * weiss(u, kappa, r, rule, radial_panels);
    out.radii.push_back(r);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.residual.push_back(relative_residual(lhs, rhs));
  }
  return out;
}

double frequency_radial_exponential(const GroupSpec& G, double eps, double r, const SphereRule& rule) {
  if (!(eps > 0) || !(r > 0)) fail(ErrorCode::InvalidArgument, "eps and r must be positive");
  auto geo = geometry_of(G);
  auto u = group_fn_field(G, [geo, eps](std::span<const double> z, std::span<const double> t) {
    return std::exp(-std::pow(geo.rho(z, t), -eps));
  });
  Sums s = surface_sums(*u, r, rule);
  if (height_negligible(s, r, rule.geo.Q())) fail(ErrorCode::ZeroHeight, "H(r) vanishes");
  return r * (s.psi_uzu / r) / s.psi_uu;
}

std::vector<double> geometric_radii(double rmin, double rmax, int steps) {
  if (!(rmin > 0) || steps < 1) fail(ErrorCode::InvalidArgument, "radius grid needs rmin > 0 and steps >= 1");
  if (steps == 1) return {rmin};
  if (!(rmax > rmin)) fail(ErrorCode::InvalidArgument, "radius grid must be strictly increasing");
  std::vector<double> r(steps);
  const double q = std::log(rmax / rmin) / (steps - 1);
  for (int i = 0; i < steps; ++i) r[i] = rmin * std::exp(q * i);
  r.back() = rmax;
  return r;
}

KappaEstimate estimate_kappa(const Field& u, double r_min, const SphereRule& rule, double snap_tol,
                             int radial_panels) {
  KappaEstimate e;
  e.raw = frequency(u, r_min, rule, radial_panels);
  const double near = std::round(e.raw);
  e.snapped = std::abs(e.raw - near) <= snap_tol;
  e.kappa = e.snapped ? near : e.raw;
  return e;
}

FrequencyCurve frequency_curve(const Field& u, const std::vector<double>& radii, const SphereRule& rule,
                               const CurveOptions& opts) {
  check_field(u, rule);
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) fail(ErrorCode::InvalidArgument, "radius grid must be strictly increasing");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double Q = rule.geo.Q();
  FrequencyCurve c;
  for (double r : radii) {
    Sums s = surface_sums(u, r, rule);
    const double D = dirichlet(u, r, rule, opts.radial_panels);
    const double H = std::pow(r, Q - 1) * s.psi_uu;
    double N = nan;
    if (height_negligible(s, r, Q))
      ++c.zero_height;
    else
      N = r * D / H;
    double W = nan, M = nan;
    if (opts.kappa) {
      const double kap = *opts.kappa;
      W = D / std::pow(r, Q - 2 + 2 * kap) - kap * H / std::pow(r, Q - 1 + 2 * kap);
      if (opts.u_minus_p) M = monneau(*opts.u_minus_p, kap, r, rule);
    }
    c.r.push_back(r);
    c.D.push_back(D);
    c.H.push_back(H);
    c.N.push_back(N);
    c.W.push_back(W);
    c.M.push_back(M);
    c.disc.push_back(std::sqrt(std::pow(r, Q - 1) * s.disc2) * 4.0 / (r * r * r));
  }
  return c;
}

}  // namespace cfreq
