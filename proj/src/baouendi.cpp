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

#include "carnotfreq/baouendi.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "carnotfreq/errors.hpp"
#include "carnotfreq/operators.hpp"

namespace cfreq {

namespace {

double sphere_area(int d) { return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0); }

}  // namespace

double rho_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t) {
  return geometry_of(spec).rho(z, t);
}

double psi_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t) {
  return geometry_of(spec).psi(z, t);
}

Rational quadratic_harmonic_constant(const BaouendiSpec& spec) {
  const int m = spec.m, k = spec.k;
  const int a = spec.alpha_int() + 1;
  Polynomial zpart = z_norm_sq(m, k).pow(a);
  Polynomial tpart = t_norm_sq(m, k);
  Polynomial bz = baouendi_apply(spec, zpart);
  Polynomial bt = baouendi_apply(spec, tpart);
  // B(zpart) - A B(tpart) = 0: read A off one monomial, then confirm.
  if (bt.is_zero()) fail(ErrorCode::InvalidArgument, "degenerate quadratic harmonic");
  const auto& [e, c] = *bt.terms().begin();
  auto it = bz.terms().find(e);
  Rational A = it == bz.terms().end() ? Rational(0) : it->second / c;
  if (!(bz - bt * A).is_zero()) fail(ErrorCode::InvalidArgument, "no quadratic harmonic of this form");
  return A;
}

Polynomial solid_harmonic_quadratic(const BaouendiSpec& spec) {
  const int a = spec.alpha_int() + 1;
  Rational A = quadratic_harmonic_constant(spec);
  return z_norm_sq(spec.m, spec.k).pow(a) - t_norm_sq(spec.m, spec.k) * A;
}

double orthogonality_check(const Field& P, const Field& P2, double r, const SphereRule& rule) {
  auto f = [&](std::span<const double> z, std::span<const double> t) { return P.value(z, t) * P2.value(z, t); };
  return surface_integral(f, r, rule, true);
}

ConstantEstimate normalization_constant(const BaouendiSpec& spec) {
  const int m = spec.m, k = spec.k;
  const double al = spec.alpha, a = spec.a(), Q = spec.Q();
  const double p = (Q + 2 * al) / (2 * a);
  boost::math::quadrature::exp_sinh<double> outer, inner;
  double inner_err_max = 0;
  // Integrands in log space so the tails underflow to zero instead of inf * 0.
  auto f = [&](double s) {
    const double lsa = a * std::log(s);
    const double lbase = 2 * (lsa > 700 ? lsa + std::log1p(std::exp(-lsa)) : std::log1p(std::exp(lsa)));
    const double ls = (m - 1 + al - 1) * std::log(s);
    auto g = [&](double tau) {
      const double lt = std::log(4 * a * a) + 2 * std::log(tau);
      const double hi = std::max(lbase, lt), lo = std::min(lbase, lt);
      return std::exp(ls + (k - 1) * std::log(tau) - p * (hi + std::log1p(std::exp(lo - hi))));
    };
    double err = 0;
    double v = inner.integrate(g, 1e-13, &err);
    inner_err_max = std::max(inner_err_max, std::abs(err / (v == 0 ? 1 : v)));
    return v;
  };
  double err = 0;
  double I = outer.integrate(f, 1e-12, &err);
  const double rel = std::abs(err / I) + inner_err_max;
  I *= sphere_area(m) * sphere_area(k);
  const double C = 1.0 / ((m + al - 1) * (Q - 2) * I);
  return ConstantEstimate{C, C * rel};
}

ConstantEstimate normalization_constant_flux(const BaouendiSpec& spec) {
  const double a = spec.a(), Q = spec.Q();
  const double x = (spec.m + 2 * spec.alpha) / (2 * a);
  const double S = sphere_area(spec.m) * sphere_area(spec.k) * std::pow(2 * a, -spec.k) * 0.5 *
                   boost::math::beta(x, spec.k / 2.0);
  const double C = 1.0 / ((Q - 2) * S);
  return ConstantEstimate{C, C * 1e-14};
}

ConstantEstimate normalization_constant_mc(const BaouendiSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  if (samples < kMinMCSamples) fail(ErrorCode::InsufficientSamples, "too few Monte Carlo samples");
  const int m = spec.m, k = spec.k;
  const double al = spec.alpha, a = spec.a(), Q = spec.Q();
  const double p = (Q + 2 * al) / (2 * a);
  // Map (0,1)^2 onto (0,inf)^2 with s = u/(1-u).
  double sum = 0, sum2 = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double u = uniform01(seed, 2 * i), v = uniform01(seed, 2 * i + 1);
    if (u <= 0 || v <= 0) continue;
    const double s = u / (1 - u), tau = v / (1 - v);
    const double jac = 1.0 / ((1 - u) * (1 - u) * (1 - v) * (1 - v));
    const double base = std::pow(std::pow(s, a) + 1, 2) + 4 * a * a * tau * tau;
    const double y = jac * std::pow(s, m - 1 + al - 1) * std::pow(tau, k - 1) * std::pow(base, -p);
    sum += y;
    sum2 += y * y;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / (n - 1));
  const double scale = sphere_area(m) * sphere_area(k) * (m + al - 1) * (Q - 2);
  const double C = 1.0 / (scale * mean);
  return ConstantEstimate{C, C * se / mean};
}

double fundamental_solution_alpha(const BaouendiSpec& spec, std::span<const double> z, std::span<const double> t) {
  const double r = rho_alpha(spec, z, t);
  if (r == 0) fail(ErrorCode::OriginSingularity, "Gamma is singular at the origin");
  static std::mutex mu;
  static std::vector<std::pair<std::vector<double>, double>> cache;
  const std::vector<double> key{double(spec.m), double(spec.k), spec.alpha};
  double C = 0;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [kk, v] : cache)
      if (kk == key) C = v;
    if (C == 0) {
      C = normalization_constant(spec).value;
      cache.emplace_back(key, C);
    }
  }
  return C * std::pow(r, 2 - spec.Q());
}

}  // namespace cfreq
