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

#include "carnotfreq/group.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/sobol.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "carnotfreq/errors.hpp"

namespace cfreq {

struct GroupSpec::Cache {
  std::once_flag folland_once;
  double folland = 0.0;
  std::once_flag classify_once;
  Classification classification;
};

namespace {

// log(1 + s^2) without overflow.
double log1p_sq(double s) {
  return s > 1e100 ? 2 * std::log(s) + std::log1p(1 / (s * s)) : std::log1p(s * s);
}

double log_add(double x, double y) {
  const double hi = std::max(x, y), lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

Rational det_exact(RMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

// Dense univariate polynomial over Q, lowest degree first.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences, then expansion to monomial coefficients.
  const std::size_t n = xs.size();
  std::vector<Rational> c(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly p{c[n - 1]};
  for (std::size_t ii = n - 1; ii-- > 0;) {
    UPoly q(p.size() + 1, Rational(0));
    for (std::size_t d = 0; d < p.size(); ++d) {
      q[d + 1] += p[d];
      q[d] -= xs[ii] * p[d];
    }
    q[0] += c[ii];
    p = std::move(q);
  }
  trim(p);
  return p;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

UPoly remainder(UPoly a, const UPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

int sign_changes(const std::vector<int>& s) {
  int n = 0, prev = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (prev != 0 && v != prev) ++n;
    prev = v;
  }
  return n;
}

// Number of distinct real roots via a Sturm sequence.
int count_real_roots(const UPoly& p) {
  if (p.size() <= 1) return 0;
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    UPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& q : seq) {
    if (q.empty()) continue;
    int lead = sgn(q.back());
    at_pos.push_back(lead);
    at_neg.push_back((q.size() - 1) % 2 == 0 ? lead : -lead);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

RMatrix combine(const RMatrix& A, const RMatrix& B, const Rational& x) {
  RMatrix out = A;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) out[i][j] += x * B[i][j];
  return out;
}

Classification classify_impl(const GroupSpec& G) {
  Classification c;
  c.is_htype = G.is_htype();
  const int m = G.m(), k = G.k();
  if (k == 1) {
    c.is_metivier = det_exact(G.J()[0]) != 0;
    c.min_singular_value = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  if (k == 2) {
    // det(J1 + x J2) is a polynomial of degree <= m; J(t) is singular for
    // some unit t iff it has a real root or det(J2) = 0.
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= m; ++i) {
      xs.emplace_back(i);
      ys.push_back(det_exact(combine(G.J()[0], G.J()[1], Rational(i))));
    }
    UPoly p = interpolate(xs, ys);
    bool det2 = det_exact(G.J()[1]) != 0;
    c.is_metivier = det2 && !p.empty() && count_real_roots(p) == 0;
    c.min_singular_value = std::numeric_limits<double>::quiet_NaN();
    return c;
  }
  boost::random::sobol gen(static_cast<std::size_t>(k));
  gen.discard(static_cast<std::uintmax_t>(k));  // skip the origin
  boost::math::normal_distribution<double> normal;
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  double smin = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd Jt(m, m);
  for (int s = 0; s < kMetivierSamples; ++s) {
    std::vector<double> t(k);
    double norm = 0;
    for (int l = 0; l < k; ++l) {
      double u = (static_cast<double>(gen()) + 0.5) * scale;
      t[l] = boost::math::quantile(normal, u);
      norm += t[l] * t[l];
    }
    norm = std::sqrt(norm);
    Jt.setZero();
    for (int l = 0; l < k; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) Jt(i, j) += t[l] / norm * G.Jd(l, i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Jt);
    smin = std::min(smin, svd.singularValues()(m - 1));
  }
  c.metivier_exact = false;
  c.samples = kMetivierSamples;
  c.min_singular_value = smin;
  c.is_metivier = smin > 1e-12;
  return c;
}

double sphere_area(int d) {
  // Area of the unit sphere S^{d-1} in R^d.
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

double koranyi(std::span<const double> z, std::span<const double> t) {
  double z2 = 0, t2 = 0;
  for (double v : z) z2 += v * v;
  for (double v : t) t2 += v * v;
  return std::pow(z2 * z2 + 16.0 * t2, 0.25);
}

void check_dims(const GroupSpec& G, const Point& g) {
  if (static_cast<int>(g.z.size()) != G.m() || static_cast<int>(g.t.size()) != G.k())
    fail(ErrorCode::DimensionMismatch, "point does not match group dimensions");
}

void check_dims(const GroupSpec& G, const RPoint& g) {
  if (static_cast<int>(g.z.size()) != G.m() || static_cast<int>(g.t.size()) != G.k())
    fail(ErrorCode::DimensionMismatch, "point does not match group dimensions");
}

}  // namespace

bool htype_identity_holds(int m, const std::vector<RMatrix>& J) {
  const std::size_t k = J.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          Rational s = 0;
          for (int r = 0; r < m; ++r) s += J[a][r][i] * J[b][r][j] + J[b][r][i] * J[a][r][j];
          Rational want = (a == b && i == j) ? 2 : 0;
          if (s != want) return false;
        }
  return true;
}

GroupSpec GroupSpec::make(int m, int k, std::vector<RMatrix> J) {
  if (m < 1 || k < 1) fail(ErrorCode::DimensionMismatch, "m and k must be positive");
  if (static_cast<int>(J.size()) != k)
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(k) + " matrices");
  for (const auto& M : J) {
    if (static_cast<int>(M.size()) != m) fail(ErrorCode::DimensionMismatch, "matrix must be m x m");
    for (const auto& row : M)
      if (static_cast<int>(row.size()) != m) fail(ErrorCode::DimensionMismatch, "matrix must be m x m");
  }
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        if (J[l][i][j] != -J[l][j][i])
          fail(ErrorCode::NonSkewSymmetric, "J_" + std::to_string(l + 1) + " is not skew-symmetric");
  GroupSpec G;
  G.m_ = m;
  G.k_ = k;
  G.Jd_.resize(static_cast<std::size_t>(k) * m * m);
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) G.Jd_[(l * m + i) * m + j] = J[l][i][j].get_d();
  G.htype_ = htype_identity_holds(m, J);
  G.J_ = std::move(J);
  G.cache_ = std::make_shared<Cache>();
  return G;
}

GroupSpec GroupSpec::make(int m, int k, const std::vector<std::vector<std::vector<double>>>& J) {
  std::vector<RMatrix> R;
  for (const auto& M : J) {
    RMatrix rm;
    for (const auto& row : M) {
      std::vector<Rational> r;
      for (double v : row) r.push_back(rational_from_double(v));
      rm.push_back(std::move(r));
    }
    R.push_back(std::move(rm));
  }
  return make(m, k, std::move(R));
}

GroupSpec GroupSpec::heisenberg(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "Heisenberg group needs n >= 1");
  const int m = 2 * n;
  RMatrix J(m, std::vector<Rational>(m, Rational(0)));
  // z = (x_1..x_n, y_1..y_n); Theta = sum x_j d/dy_j - y_j d/dx_j.
  for (int j = 0; j < n; ++j) {
    J[j][n + j] = -1;
    J[n + j][j] = 1;
  }
  return make(m, 1, std::vector<RMatrix>{J});
}

Classification GroupSpec::classify() const {
  std::call_once(cache_->classify_once, [&] { cache_->classification = classify_impl(*this); });
  return cache_->classification;
}

double GroupSpec::folland_constant() const {
  std::call_once(cache_->folland_once, [&] {
    const double p = (Q() + 2) / 4.0;
    const int m = m_, k = k_;
    boost::math::quadrature::exp_sinh<double> outer, inner;
    // Integrands in log space so the tails underflow to zero instead of inf * 0.
    auto f = [&](double s) {
      const double la = 2 * log1p_sq(s), ls = (m - 1) * std::log(s);
      auto g = [&](double tau) {
        const double lt = std::log(16.0) + 2 * std::log(tau);
        return std::exp(ls + (k - 1) * std::log(tau) - p * log_add(la, lt));
      };
      return inner.integrate(g, 1e-13);
    };
    double I = outer.integrate(f, 1e-12) * sphere_area(m) * sphere_area(k);
    cache_->folland = 1.0 / (m * (Q() - 2) * I);
  });
  return cache_->folland;
}

void GroupSpec::apply_Jt(std::span<const double> t, std::span<const double> z,
                         std::span<double> out) const {
  for (int i = 0; i < m_; ++i) {
    double s = 0;
    for (int l = 0; l < k_; ++l)
      for (int j = 0; j < m_; ++j) s += t[l] * Jd(l, i, j) * z[j];
    out[i] = s;
  }
}

Point group_product(const GroupSpec& G, const Point& g, const Point& h) {
  check_dims(G, g);
  check_dims(G, h);
  Point out{g.z, g.t};
  for (int i = 0; i < G.m(); ++i) out.z[i] += h.z[i];
  for (int l = 0; l < G.k(); ++l) {
    double s = 0;
    for (int i = 0; i < G.m(); ++i)
      for (int j = 0; j < G.m(); ++j) s += G.Jd(l, i, j) * g.z[j] * h.z[i];
    out.t[l] += h.t[l] + 0.5 * s;
  }
  return out;
}

RPoint group_product(const GroupSpec& G, const RPoint& g, const RPoint& h) {
  check_dims(G, g);
  check_dims(G, h);
  RPoint out{g.z, g.t};
  for (int i = 0; i < G.m(); ++i) out.z[i] += h.z[i];
  for (int l = 0; l < G.k(); ++l) {
    Rational s = 0;
    for (int i = 0; i < G.m(); ++i)
      for (int j = 0; j < G.m(); ++j) s += G.J()[l][i][j] * g.z[j] * h.z[i];
    out.t[l] += h.t[l] + s / 2;
  }
  return out;
}

Point group_inverse(const Point& g) {
  Point out = g;
  for (auto& v : out.z) v = -v;
  for (auto& v : out.t) v = -v;
  return out;
}

RPoint group_inverse(const RPoint& g) {
  RPoint out = g;
  for (auto& v : out.z) v = -v;
  for (auto& v : out.t) v = -v;
  return out;
}

Point identity_point(const GroupSpec& G) {
  return Point{std::vector<double>(G.m(), 0.0), std::vector<double>(G.k(), 0.0)};
}

Point dilate(const GroupSpec& G, double lambda, const Point& g) {
  check_dims(G, g);
  if (!(lambda > 0)) fail(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
  Point out = g;
  for (auto& v : out.z) v *= lambda;
  for (auto& v : out.t) v *= lambda * lambda;
  return out;
}

RPoint dilate(const GroupSpec& G, const Rational& lambda, const RPoint& g) {
  check_dims(G, g);
  if (lambda <= 0) fail(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
  RPoint out = g;
  for (auto& v : out.z) v *= lambda;
  for (auto& v : out.t) v *= lambda * lambda;
  return out;
}

Point to_double(const RPoint& g) {
  Point p;
  for (const auto& v : g.z) p.z.push_back(v.get_d());
  for (const auto& v : g.t) p.t.push_back(v.get_d());
  return p;
}

double gauge(const GroupSpec& G, const Point& g) {
  check_dims(G, g);
  if (!G.is_htype()) fail(ErrorCode::NotHType, "the Koranyi gauge requires an H-type group");
  return koranyi(g.z, g.t);
}

double horiz_gauge_grad_sq(const GroupSpec& G, const Point& g) {
  check_dims(G, g);
  return horiz_gauge_grad_sq(G, std::span<const double>(g.z), std::span<const double>(g.t));
}

double horiz_gauge_grad_sq(const GroupSpec& G, std::span<const double> z, std::span<const double> t) {
  double z2 = 0;
  for (double v : z) z2 += v * v;
  double jz[64];
  std::vector<double> heap;
  std::span<double> out(jz, z.size());
  if (z.size() > 64) {
    heap.resize(z.size());
    out = heap;
  }
  G.apply_Jt(t, z, out);
  double jz2 = 0;
  for (double v : out) jz2 += v * v;
  double rho = koranyi(z, t);
  if (rho == 0) fail(ErrorCode::OriginSingularity, "psi is undefined at the identity");
  double r6 = rho * rho * rho;
  r6 *= r6;
  double psi = (z2 * z2 * z2 + 16.0 * jz2) / r6;
  return current_fault() == Fault::PsiSign ? -psi : psi;
}

double fundamental_solution(const GroupSpec& G, const Point& g) {
  double rho = gauge(G, g);
  if (rho == 0) fail(ErrorCode::OriginSingularity, "Gamma is singular at the identity");
  return G.folland_constant() * std::pow(rho, 2.0 - G.Q());
}

}  // namespace cfreq
