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

#include "carnotfreq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "carnotfreq/errors.hpp"

namespace cfreq {

namespace {

// Gauss rule for the weight (1-x^2)^lambda on [-1, 1] by Golub-Welsch.
void gauss_gegenbauer(int n, double lambda, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(lambda + 1) / std::tgamma(lambda + 1.5);
  if (n == 1) {
    w[0] = mu0;
    return;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int j = 1; j < n; ++j) {
    double b = j * (j + 2 * lambda) / ((2 * j + 2 * lambda + 1) * (2 * j + 2 * lambda - 1));
    sub(j - 1) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return es.eigenvalues()(a) < es.eigenvalues()(b); });
  for (int i = 0; i < n; ++i) {
    int j = order[i];
    x[i] = es.eigenvalues()(j);
    double v0 = es.eigenvectors()(0, j);
    w[i] = mu0 * v0 * v0;
  }
  // Enforce the exact symmetry of the rule.
  for (int i = 0; i < n / 2; ++i) {
    double xs = 0.5 * (x[n - 1 - i] - x[i]);
    double ws = 0.5 * (w[i] + w[n - 1 - i]);
    x[i] = -xs;
    x[n - 1 - i] = xs;
    w[i] = w[n - 1 - i] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// Nodes/weights in phi on (0, pi/2).
void phi_rule(const GaugeGeometry& geo, int n, std::vector<double>& phi, std::vector<double>& w) {
  std::vector<double> x, gw;
  gauss_legendre(n, x, gw);
  phi.resize(n);
  w.resize(n);
  const double a = geo.a();
  const double half_pi = 0.5 * std::numbers::pi;
  // With a = 2 and m even every smooth integrand is smooth in cos(phi) after the
  // angular sums, so plain Gauss-Legendre converges spectrally.
  if (a == 2.0 && geo.m % 2 == 0) {
    for (int i = 0; i < n; ++i) {
      phi[i] = half_pi * 0.5 * (x[i] + 1);
      w[i] = half_pi * 0.5 * gw[i];
    }
    return;
  }
  // Otherwise cos(phi)^{1/a} has a branch point at phi = pi/2; the substitution
  // phi = pi/2 * u^q / (u^q + (1-u)^q) with q a multiple of a removes it.
  double q = 3.0;
  for (int j = 1; j <= 8; ++j)
    if (near_integer(a * j) && a * j >= 2.0) {
      q = std::round(a * j);
      break;
    }
  for (int i = 0; i < n; ++i) {
    double u = 0.5 * (x[i] + 1);
    double uq = std::pow(u, q), vq = std::pow(1 - u, q);
    double den = uq + vq;
    phi[i] = half_pi * uq / den;
    double dg = q * std::pow(u, q - 1) * std::pow(1 - u, q - 1) / (den * den);
    w[i] = half_pi * dg * 0.5 * gw[i];
  }
}

SphereRule build_rule(const GaugeGeometry& geo, int resolution) {
  if (resolution < kMinResolution)
    fail(ErrorCode::ResolutionTooSmall, "resolution must be at least " + std::to_string(kMinResolution));
  const int m = geo.m, k = geo.k, n = resolution;
  const double a = geo.a();
  std::vector<double> phi, wphi, om, wom, ta, wta;
  phi_rule(geo, n, phi, wphi);
  unit_sphere_rule(m, n, om, wom);
  unit_sphere_rule(k, n, ta, wta);
  SphereRule rule;
  rule.geo = geo;
  rule.resolution = resolution;
  const std::size_t total = phi.size() * wom.size() * wta.size();
  rule.z.reserve(total * m);
  rule.t.reserve(total * k);
  rule.w.reserve(total);
  rule.psi.reserve(total);
  const double scale = std::pow(2 * a, -k);
  for (std::size_t p = 0; p < phi.size(); ++p) {
    const double c = std::cos(phi[p]), s = std::sin(phi[p]);
    const double zr = std::pow(c, 1.0 / a);
    const double tr = s / (2 * a);
    const double radial = scale * std::pow(c, m / a - 1) * std::pow(s, k - 1) * wphi[p];
    for (std::size_t o = 0; o < wom.size(); ++o)
      for (std::size_t q = 0; q < wta.size(); ++q) {
        for (int i = 0; i < m; ++i) rule.z.push_back(zr * om[o * m + i]);
        for (int l = 0; l < k; ++l) rule.t.push_back(tr * ta[q * k + l]);
        rule.w.push_back(radial * wom[o] * wta[q]);
        std::size_t idx = rule.w.size() - 1;
        rule.psi.push_back(geo.psi(rule.node_z(idx), rule.node_t(idx)));
      }
  }
  return rule;
}

}  // namespace

double GaugeGeometry::rho(std::span<const double> z, std::span<const double> t) const {
  double z2 = 0, t2 = 0;
  for (double v : z) z2 += v * v;
  for (double v : t) t2 += v * v;
  const double A = a();
  return std::pow(std::pow(z2, A) + 4 * A * A * t2, 1.0 / (2 * A));
}

double GaugeGeometry::psi(std::span<const double> z, std::span<const double> t) const {
  if (group) return horiz_gauge_grad_sq(*group, z, t);
  double z2 = 0;
  for (double v : z) z2 += v * v;
  double r = rho(z, t);
  if (r == 0) fail(ErrorCode::OriginSingularity, "psi is undefined at the origin");
  double v = std::pow(z2 / (r * r), alpha);
  return current_fault() == Fault::PsiSign ? -v : v;
}

GaugeGeometry geometry_of(const GroupSpec& G) {
  if (!G.is_htype()) fail(ErrorCode::NotHType, "gauge quadrature requires an H-type group");
  GaugeGeometry geo;
  geo.m = G.m();
  geo.k = G.k();
  geo.alpha = 1.0;
  geo.group = std::make_shared<const GroupSpec>(G);
  return geo;
}

GaugeGeometry geometry_of(const BaouendiSpec& spec) {
  GaugeGeometry geo;
  geo.m = spec.m;
  geo.k = spec.k;
  geo.alpha = spec.alpha;
  return geo;
}

SphereRule build_sphere_rule(const GroupSpec& G, int resolution) {
  return build_rule(geometry_of(G), resolution);
}

SphereRule build_sphere_rule(const BaouendiSpec& spec, int resolution) {
  return build_rule(geometry_of(spec), resolution);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  gauss_gegenbauer(n, 0.0, x, w);
}

void unit_sphere_rule(int d, int n, std::vector<double>& pts, std::vector<double>& w) {
  pts.clear();
  w.clear();
  if (d == 1) {
    pts = {-1.0, 1.0};
    w = {1.0, 1.0};
    return;
  }
  if (d == 2) {
    const int na = 2 * n;
    for (int j = 0; j < na; ++j) {
      double th = (j + 0.5) * std::numbers::pi / n;
      pts.push_back(std::cos(th));
      pts.push_back(std::sin(th));
      w.push_back(std::numbers::pi / n);
    }
    return;
  }
  std::vector<double> u, wu, sub, wsub;
  gauss_gegenbauer(n, (d - 3) / 2.0, u, wu);
  unit_sphere_rule(d - 1, n, sub, wsub);
  for (int i = 0; i < n; ++i) {
    const double s = std::sqrt(std::max(0.0, 1 - u[i] * u[i]));
    for (std::size_t j = 0; j < wsub.size(); ++j) {
      for (int c = 0; c < d - 1; ++c) pts.push_back(s * sub[j * (d - 1) + c]);
      pts.push_back(u[i]);
      w.push_back(wu[i] * wsub[j]);
    }
  }
}

void dilated_node(const SphereRule& rule, std::size_t i, double s, std::span<double> z, std::span<double> t) {
  const double sa = std::pow(s, rule.geo.a());
  auto nz = rule.node_z(i);
  auto nt = rule.node_t(i);
  for (int c = 0; c < rule.geo.m; ++c) z[c] = s * nz[c];
  for (int c = 0; c < rule.geo.k; ++c) t[c] = sa * nt[c];
}

void radial_rule(double r, int panels, std::vector<double>& s, std::vector<double>& w) {
  if (panels < 1) fail(ErrorCode::InvalidArgument, "need at least one radial panel");
  static const auto base = [] {
    std::pair<std::vector<double>, std::vector<double>> xw;
    gauss_legendre(kRadialPointsPerPanel, xw.first, xw.second);
    return xw;
  }();
  s.clear();
  w.clear();
  const double h = r / panels;
  for (int p = 0; p < panels; ++p)
    for (int q = 0; q < kRadialPointsPerPanel; ++q) {
      s.push_back(h * (p + 0.5 * (base.first[q] + 1)));
      w.push_back(0.5 * h * base.second[q]);
    }
}

double volume_integral(const ScalarFn& f, double r, const SphereRule& rule, int radial_panels) {
  std::vector<double> s, ws;
  radial_rule(r, radial_panels, s, ws);
  std::vector<double> z(rule.geo.m), t(rule.geo.k);
  const double Q = rule.geo.Q();
  double total = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    double shell = 0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      dilated_node(rule, i, s[q], z, t);
      shell += rule.w[i] * f(z, t);
    }
    total += ws[q] * std::pow(s[q], Q - 1) * shell;
  }
  return total;
}

double surface_integral(const ScalarFn& f, double r, const SphereRule& rule, bool weighted) {
  std::vector<double> z(rule.geo.m), t(rule.geo.k);
  double sum = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    dilated_node(rule, i, r, z, t);
    sum += rule.w[i] * (weighted ? rule.psi[i] : 1.0) * f(z, t);
  }
  return std::pow(r, rule.geo.Q() - 1) * sum;
}

namespace {

struct BoxSampler {
  const GaugeGeometry& geo;
  double R;
  double tmax;
  double volume;
  BoxSampler(const GaugeGeometry& g, double radius) : geo(g), R(radius) {
    const double a = geo.a();
    tmax = std::pow(R, a) / (2 * a);
    volume = std::pow(2 * R, geo.m) * std::pow(2 * tmax, geo.k);
  }
  void draw(std::uint64_t seed, std::uint64_t idx, std::vector<double>& z, std::vector<double>& t) const {
    const std::uint64_t dims = geo.m + geo.k;
    for (int i = 0; i < geo.m; ++i) z[i] = R * (2 * uniform01(seed, idx * dims + i) - 1);
    for (int l = 0; l < geo.k; ++l) t[l] = tmax * (2 * uniform01(seed, idx * dims + geo.m + l) - 1);
  }
};

MCEstimate finish(double sum, double sum2, std::uint64_t n, double scale) {
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return MCEstimate{scale * mean, scale * std::sqrt(var / (n - 1))};
}

}  // namespace

MCEstimate mc_thin_shell(const ScalarFn& f, double r, double h, std::uint64_t samples, std::uint64_t seed,
                         const GaugeGeometry& geo, bool weighted) {
  if (samples < kMinMCSamples) fail(ErrorCode::InsufficientSamples, "too few Monte Carlo samples");
  if (!(h > 0) || !(h < r)) fail(ErrorCode::InvalidArgument, "shell half width must lie in (0, r)");
  BoxSampler box(geo, r + h);
  std::vector<double> z(geo.m), t(geo.k), zp(geo.m), tp(geo.k);
  const double Q = geo.Q(), a = geo.a();
  double sum = 0, sum2 = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    box.draw(seed, i, z, t);
    double rho = geo.rho(z, t);
    double y = 0;
    if (rho > r - h && rho < r + h) {
      const double lam = r / rho;
      for (int c = 0; c < geo.m; ++c) zp[c] = lam * z[c];
      for (int c = 0; c < geo.k; ++c) tp[c] = std::pow(lam, a) * t[c];
      y = f(zp, tp) * std::pow(lam, Q - 1) * (weighted ? geo.psi(z, t) : 1.0);
    }
    sum += y;
    sum2 += y * y;
  }
  return finish(sum, sum2, samples, box.volume / (2 * h));
}

MCEstimate mc_volume_integral(const ScalarFn& f, double r, std::uint64_t samples, std::uint64_t seed,
                              const GaugeGeometry& geo) {
  if (samples < kMinMCSamples) fail(ErrorCode::InsufficientSamples, "too few Monte Carlo samples");
  BoxSampler box(geo, r);
  std::vector<double> z(geo.m), t(geo.k);
  double sum = 0, sum2 = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    box.draw(seed, i, z, t);
    double y = geo.rho(z, t) < r ? f(z, t) : 0.0;
    sum += y;
    sum2 += y * y;
  }
  return finish(sum, sum2, samples, box.volume);
}

double mean_value(const GroupSpec& G, const ScalarFn& u, const Point& g, double r, const SphereRule& rule,
                  int radial_panels) {
  if (!G.is_htype()) fail(ErrorCode::NotHType, "mean value formula requires an H-type group");
  if (!rule.geo.group) fail(ErrorCode::InvalidArgument, "rule was not built for a group");
  if (static_cast<int>(g.z.size()) != G.m() || static_cast<int>(g.t.size()) != G.k())
    fail(ErrorCode::DimensionMismatch, "center does not match group dimensions");
  const double Q = G.Q();
  Point h{std::vector<double>(G.m()), std::vector<double>(G.k())};
  auto integrand = [&](std::span<const double> z, std::span<const double> t) {
    std::copy(z.begin(), z.end(), h.z.begin());
    std::copy(t.begin(), t.end(), h.t.begin());
    Point gh = group_product(G, g, h);
    return u(gh.z, gh.t) * rule.geo.psi(z, t);
  };
  double I = volume_integral(integrand, r, rule, radial_panels);
  return G.folland_constant() * Q * (Q - 2) * std::pow(r, -Q) * I;
}

}  // namespace cfreq
