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

#include "carnotfreq/operators.hpp"

#include <algorithm>
#include <functional>

#include "carnotfreq/errors.hpp"

namespace cfreq {

namespace {

void check_space(const GroupSpec& G, const Polynomial& p) {
  if (p.m() != G.m() || p.k() != G.k())
    fail(ErrorCode::DimensionMismatch, "polynomial does not match group dimensions");
}

void check_space(const BaouendiSpec& s, const Polynomial& p) {
  if (p.m() != s.m || p.k() != s.k)
    fail(ErrorCode::DimensionMismatch, "polynomial does not match Baouendi dimensions");
}

// All exponent vectors with |a| + t_weight*|b| = degree, in canonical order.
std::vector<Exponents> homogeneous_monomials(int m, int k, int degree, int t_weight) {
  std::vector<Exponents> out;
  Exponents e(m + k, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == m + k) {
      if (left == 0) out.push_back(e);
      return;
    }
    int w = v < m ? 1 : t_weight;
    for (int p = 0; p * w <= left; ++p) {
      e[v] = p;
      rec(v + 1, left - p * w);
    }
    e[v] = 0;
  };
  if (degree >= 0) rec(0, degree);
  std::sort(out.begin(), out.end(), DescLex{});
  return out;
}

mpz_class lcm_denominators(const std::vector<Rational>& row) {
  mpz_class l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Kernel of an integer matrix: Bareiss elimination to echelon form with the
// first available pivot column, then exact back substitution per free column.
std::vector<std::vector<Rational>> integer_kernel(std::vector<std::vector<mpz_class>> A, std::size_t ncols) {
  const std::size_t nrows = A.size();
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && A[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(A[piv], A[r]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        mpz_class v = A[r][c] * A[i][j] - A[i][c] * A[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A[i][j] = v;
      }
      A[i][c] = 0;
    }
    prev = A[r][c];
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[f] = 1;
    for (std::size_t pi = pivots.size(); pi-- > 0;) {
      std::size_t c = pivots[pi];
      Rational s = 0;
      for (std::size_t j = c + 1; j < ncols; ++j)
        if (x[j] != 0) s += Rational(A[pi][j]) * x[j];
      x[c] = -s / Rational(A[pi][c]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<Rational> clear_and_normalize(const std::vector<Rational>& v) {
  mpz_class l = lcm_denominators(v);
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& q : v) {
    mpz_class n = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  int sign = 1;
  for (const auto& n : ints)
    if (n != 0) {
      sign = sgn(n) < 0 ? -1 : 1;
      break;
    }
  std::vector<Rational> out;
  for (auto& n : ints) out.emplace_back(sign * n / g);
  return out;
}

}  // namespace

Polynomial Jz_component(const GroupSpec& G, int l, int i) {
  Polynomial p(G.m(), G.k());
  for (int j = 0; j < G.m(); ++j) {
    const Rational& c = G.J()[l][i][j];
    if (c == 0) continue;
    Exponents e(G.m() + G.k(), 0);
    e[j] = 1;
    p.add_term(e, c);
  }
  return p;
}

Polynomial apply_X(const GroupSpec& G, int i, const Polynomial& p) {
  check_space(G, p);
  if (i < 0 || i >= G.m()) fail(ErrorCode::IndexOutOfRange, "X index out of range");
  Polynomial r = p.d_z(i);
  const Rational half(1, 2);
  for (int l = 0; l < G.k(); ++l) {
    Polynomial dt = p.d_t(l);
    if (dt.is_zero()) continue;
    r = r + Jz_component(G, l, i) * dt * half;
  }
  return r;
}

Polynomial apply_theta(const GroupSpec& G, int l, const Polynomial& p) {
  check_space(G, p);
  if (l < 0 || l >= G.k()) fail(ErrorCode::IndexOutOfRange, "Theta index out of range");
  Polynomial r(G.m(), G.k());
  for (int i = 0; i < G.m(); ++i) {
    Polynomial dz = p.d_z(i);
    if (dz.is_zero()) continue;
    r = r + Jz_component(G, l, i) * dz;
  }
  return r;
}

Polynomial sublaplacian(const GroupSpec& G, const Polynomial& p) {
  check_space(G, p);
  Polynomial r(G.m(), G.k());
  for (int i = 0; i < G.m(); ++i) r = r + apply_X(G, i, apply_X(G, i, p));
  return r;
}

Polynomial euler_Z(const GroupSpec& G, const Polynomial& p) {
  check_space(G, p);
  Polynomial r(G.m(), G.k());
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (int i = 0; i < G.m(); ++i) d += e[i];
    for (int l = 0; l < G.k(); ++l) d += 2 * e[G.m() + l];
    r.add_term(e, c * d);
  }
  return r;
}

Polynomial horizontal_grad_sq(const GroupSpec& G, const Polynomial& p) {
  Polynomial r(G.m(), G.k());
  for (int i = 0; i < G.m(); ++i) {
    Polynomial x = apply_X(G, i, p);
    r = r + x * x;
  }
  return r;
}

Polynomial z_field_divergence(const GroupSpec& G) {
  return divergence_pZ(G, Polynomial::constant(G.m(), G.k(), 1));
}

Polynomial divergence_pZ(const GroupSpec& G, const Polynomial& p) {
  check_space(G, p);
  const int m = G.m(), k = G.k();
  Polynomial r(m, k);
  for (int i = 0; i < m; ++i) r = r + (p * Polynomial::z(m, k, i)).d_z(i);
  for (int l = 0; l < k; ++l) r = r + (p * Polynomial::t(m, k, l) * Rational(2)).d_t(l);
  return r;
}

Polynomial discrepancy_poly(const GroupSpec& G, const Polynomial& p) {
  check_space(G, p);
  if (!G.is_htype()) fail(ErrorCode::NotHType, "discrepancy formula requires an H-type group");
  Polynomial r(G.m(), G.k());
  for (int l = 0; l < G.k(); ++l)
    r = r + Polynomial::t(G.m(), G.k(), l) * apply_theta(G, l, p);
  return r;
}

std::vector<Polynomial> harmonic_basis(const GroupSpec& G, int kappa) {
  if (kappa < 0) fail(ErrorCode::InvalidArgument, "degree must be nonnegative");
  const int m = G.m(), k = G.k();
  auto domain = homogeneous_monomials(m, k, kappa, 2);
  auto image = homogeneous_monomials(m, k, kappa - 2, 2);
  std::map<Exponents, std::size_t, DescLex> row_of;
  for (std::size_t i = 0; i < image.size(); ++i) row_of[image[i]] = i;
  std::vector<std::vector<Rational>> M(image.size(), std::vector<Rational>(domain.size(), Rational(0)));
  for (std::size_t j = 0; j < domain.size(); ++j) {
    Polynomial lap = sublaplacian(G, Polynomial::monomial(m, k, domain[j], 1));
    for (const auto& [e, c] : lap.terms()) M[row_of.at(e)][j] = c;
  }
  std::vector<std::vector<mpz_class>> A;
  for (const auto& row : M) {
    mpz_class l = lcm_denominators(row);
    std::vector<mpz_class> ir;
    for (const auto& q : row) ir.push_back(q.get_num() * (l / q.get_den()));
    A.push_back(std::move(ir));
  }
  std::vector<Polynomial> basis;
  for (const auto& v : integer_kernel(std::move(A), domain.size())) {
    auto w = clear_and_normalize(v);
    Polynomial p(m, k);
    for (std::size_t j = 0; j < domain.size(); ++j) p.add_term(domain[j], w[j]);
    basis.push_back(std::move(p));
  }
  return basis;
}

Polynomial compose_left_translation(const GroupSpec& G, const RPoint& g0, const Polynomial& p) {
  check_space(G, p);
  const int m = G.m(), k = G.k();
  if (static_cast<int>(g0.z.size()) != m || static_cast<int>(g0.t.size()) != k)
    fail(ErrorCode::DimensionMismatch, "center does not match group dimensions");
  std::vector<Polynomial> sub;
  for (int i = 0; i < m; ++i) sub.push_back(Polynomial::z(m, k, i) + Polynomial::constant(m, k, g0.z[i]));
  for (int l = 0; l < k; ++l) {
    Polynomial s = Polynomial::t(m, k, l) + Polynomial::constant(m, k, g0.t[l]);
    for (int i = 0; i < m; ++i) {
      Rational c = 0;
      for (int j = 0; j < m; ++j) c += G.J()[l][i][j] * g0.z[j];
      if (c != 0) s = s + Polynomial::z(m, k, i) * (c / 2);
    }
    sub.push_back(std::move(s));
  }
  std::vector<std::vector<Polynomial>> powers(m + k);
  Polynomial r(m, k);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(m, k, c);
    for (int v = 0; v < m + k; ++v) {
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Polynomial::constant(m, k, 1));
      while (static_cast<int>(pw.size()) <= e[v]) pw.push_back(pw.back() * sub[v]);
      if (e[v] > 0) term = term * pw[e[v]];
    }
    r = r + term;
  }
  return r;
}

Polynomial compose_dilation(const GroupSpec& G, const Rational& lambda, const Polynomial& p) {
  check_space(G, p);
  if (lambda <= 0) fail(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
  Polynomial r(G.m(), G.k());
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (int i = 0; i < G.m(); ++i) d += e[i];
    for (int l = 0; l < G.k(); ++l) d += 2 * e[G.m() + l];
    Rational f = 1;
    for (int i = 0; i < d; ++i) f *= lambda;
    r.add_term(e, c * f);
  }
  return r;
}

Polynomial z_norm_sq(int m, int k) {
  Polynomial r(m, k);
  for (int i = 0; i < m; ++i) {
    Exponents e(m + k, 0);
    e[i] = 2;
    r.add_term(e, 1);
  }
  return r;
}

Polynomial t_norm_sq(int m, int k) {
  Polynomial r(m, k);
  for (int l = 0; l < k; ++l) {
    Exponents e(m + k, 0);
    e[m + l] = 2;
    r.add_term(e, 1);
  }
  return r;
}

Polynomial baouendi_apply(const BaouendiSpec& spec, const Polynomial& p) {
  check_space(spec, p);
  if (!spec.integer_alpha())
    fail(ErrorCode::NonIntegerAlpha, "symbolic B_alpha needs a positive integer alpha");
  const int m = spec.m, k = spec.k;
  Polynomial dz(m, k), dt(m, k);
  for (int i = 0; i < m; ++i) dz = dz + p.d_z(i).d_z(i);
  for (int l = 0; l < k; ++l) dt = dt + p.d_t(l).d_t(l);
  return dz + z_norm_sq(m, k).pow(spec.alpha_int()) * dt * Rational(1, 4);
}

Polynomial z_alpha_apply(const BaouendiSpec& spec, const Polynomial& p) {
  check_space(spec, p);
  if (!spec.integer_alpha())
    fail(ErrorCode::NonIntegerAlpha, "symbolic Z_alpha needs a positive integer alpha");
  const int m = spec.m, k = spec.k;
  const int a = spec.alpha_int() + 1;
  Polynomial r(m, k);
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (int i = 0; i < m; ++i) d += e[i];
    for (int l = 0; l < k; ++l) d += a * e[m + l];
    r.add_term(e, c * d);
  }
  return r;
}

}  // namespace cfreq
