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

#include <map>
#include <span>
#include <vector>

#include "carnotfreq/rational.hpp"

namespace cfreq {

struct RPoint;

// Exponent vector of a monomial: m exponents on z followed by k on t.
using Exponents = std::vector<int>;

// Descending lexicographic order; this is the canonical term order.
struct DescLex {
  bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
};

// Polynomial in exponential coordinates (z, t) with exact rational
// coefficients. Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, DescLex>;

  Polynomial() = default;
  Polynomial(int m, int k) : m_(m), k_(k) {}

  static Polynomial constant(int m, int k, const Rational& c);
  static Polynomial z(int m, int k, int i);
  static Polynomial t(int m, int k, int l);
  static Polynomial monomial(int m, int k, Exponents e, const Rational& c);

  int m() const { return m_; }
  int k() const { return k_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponents& e, const Rational& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  Polynomial pow(int n) const;

  Polynomial d_z(int i) const;
  Polynomial d_t(int l) const;

  // Weighted degree |a| + t_weight*|b|; -1 for the zero polynomial.
  int max_degree(int t_weight) const;
  bool is_homogeneous(int degree, int t_weight) const;

  Rational evaluate(const RPoint& g) const;
  double evaluate(std::span<const double> z, std::span<const double> t) const;

 private:
  void check_same_space(const Polynomial& o) const;
  int m_ = 0;
  int k_ = 0;
  Terms terms_;
};

// Double-precision evaluator with per-variable power tables.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Polynomial& p);
  double operator()(std::span<const double> z, std::span<const double> t) const;
  bool empty() const { return coeff_.empty(); }

 private:
  int nvars_ = 0;
  int m_ = 0;
  std::vector<int> maxdeg_;
  std::vector<double> coeff_;
  std::vector<int> exps_;  // flattened, nvars_ per term
};

}  // namespace cfreq
