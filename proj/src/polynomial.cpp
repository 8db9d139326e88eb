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

#include "carnotfreq/polynomial.hpp"

#include <algorithm>

#include "carnotfreq/errors.hpp"
#include "carnotfreq/group.hpp"

namespace cfreq {

Polynomial Polynomial::constant(int m, int k, const Rational& c) {
  Polynomial p(m, k);
  p.add_term(Exponents(m + k, 0), c);
  return p;
}

Polynomial Polynomial::z(int m, int k, int i) {
  if (i < 0 || i >= m) fail(ErrorCode::IndexOutOfRange, "z index out of range");
  Exponents e(m + k, 0);
  e[i] = 1;
  return monomial(m, k, e, 1);
}

Polynomial Polynomial::t(int m, int k, int l) {
  if (l < 0 || l >= k) fail(ErrorCode::IndexOutOfRange, "t index out of range");
  Exponents e(m + k, 0);
  e[m + l] = 1;
  return monomial(m, k, e, 1);
}

Polynomial Polynomial::monomial(int m, int k, Exponents e, const Rational& c) {
  if (static_cast<int>(e.size()) != m + k) fail(ErrorCode::DimensionMismatch, "exponent length");
  Polynomial p(m, k);
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != m_ + k_) fail(ErrorCode::DimensionMismatch, "exponent length");
  for (int v : e)
    if (v < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    Rational q = c;
    q.canonicalize();
    terms_.emplace(e, q);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Polynomial::check_same_space(const Polynomial& o) const {
  if (m_ != o.m_ || k_ != o.k_) fail(ErrorCode::DimensionMismatch, "polynomials live in different spaces");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_space(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same_space(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(m_, k_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_space(o);
  Polynomial r(m_, k_);
  Exponents e(m_ + k_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < m_ + k_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(m_, k_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return m_ == o.m_ && k_ == o.k_ && terms_ == o.terms_;
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative power");
  Polynomial r = constant(m_, k_, 1);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::d_z(int i) const {
  if (i < 0 || i >= m_) fail(ErrorCode::IndexOutOfRange, "z index out of range");
  Polynomial r(m_, k_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

Polynomial Polynomial::d_t(int l) const {
  if (l < 0 || l >= k_) fail(ErrorCode::IndexOutOfRange, "t index out of range");
  Polynomial r(m_, k_);
  const int v = m_ + l;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponents f = e;
    f[v] -= 1;
    r.add_term(f, c * e[v]);
  }
  return r;
}

int Polynomial::max_degree(int t_weight) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i = 0; i < m_; ++i) s += e[i];
    for (int l = 0; l < k_; ++l) s += t_weight * e[m_ + l];
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_homogeneous(int degree, int t_weight) const {
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int i = 0; i < m_; ++i) s += e[i];
    for (int l = 0; l < k_; ++l) s += t_weight * e[m_ + l];
    if (s != degree) return false;
  }
  return true;
}

Rational Polynomial::evaluate(const RPoint& g) const {
  if (static_cast<int>(g.z.size()) != m_ || static_cast<int>(g.t.size()) != k_)
    fail(ErrorCode::DimensionMismatch, "point does not match polynomial space");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (int i = 0; i < m_; ++i)
      for (int p = 0; p < e[i]; ++p) v *= g.z[i];
    for (int l = 0; l < k_; ++l)
      for (int p = 0; p < e[m_ + l]; ++p) v *= g.t[l];
    s += v;
  }
  return s;
}

double Polynomial::evaluate(std::span<const double> z, std::span<const double> t) const {
  return CompiledPoly(*this)(z, t);
}

CompiledPoly::CompiledPoly(const Polynomial& p) : nvars_(p.m() + p.k()), m_(p.m()) {
  if (nvars_ > 64) fail(ErrorCode::DimensionMismatch, "too many variables for the evaluator");
  maxdeg_.assign(nvars_, 0);
  for (const auto& [e, c] : p.terms()) {
    coeff_.push_back(c.get_d());
    for (int v = 0; v < nvars_; ++v) {
      exps_.push_back(e[v]);
      maxdeg_[v] = std::max(maxdeg_[v], e[v]);
    }
  }
}

double CompiledPoly::operator()(std::span<const double> z, std::span<const double> t) const {
  if (coeff_.empty()) return 0.0;
  // Power tables, laid out variable by variable.
  double table[512];
  std::vector<double> heap;
  int total = 0;
  for (int v = 0; v < nvars_; ++v) total += maxdeg_[v] + 1;
  double* pw = table;
  if (total > 512) {
    heap.resize(total);
    pw = heap.data();
  }
  int off[64];
  int o = 0;
  for (int v = 0; v < nvars_; ++v) {
    off[v] = o;
    double x = v < m_ ? z[v] : t[v - m_];
    pw[o] = 1.0;
    for (int d = 1; d <= maxdeg_[v]; ++d) pw[o + d] = pw[o + d - 1] * x;
    o += maxdeg_[v] + 1;
  }
  double s = 0;
  const int* e = exps_.data();
  for (std::size_t i = 0; i < coeff_.size(); ++i, e += nvars_) {
    double v = coeff_[i];
    for (int j = 0; j < nvars_; ++j) v *= pw[off[j] + e[j]];
    s += v;
  }
  return s;
}

}  // namespace cfreq
