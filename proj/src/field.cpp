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

#include "carnotfreq/field.hpp"

#include <cmath>
#include <vector>

#include "carnotfreq/errors.hpp"
#include "carnotfreq/operators.hpp"

namespace cfreq {

namespace {

void check_horizontal(int n) {
  if (n > kMaxHorizontal) fail(ErrorCode::DimensionMismatch, "too many horizontal directions");
}

class GroupPolyField final : public Field {
 public:
  GroupPolyField(const GroupSpec& G, const Polynomial& p) : m_(G.m()), k_(G.k()), u_(p), zu_(euler_Z(G, p)) {
    check_horizontal(m_);
    for (int i = 0; i < m_; ++i) x_.emplace_back(apply_X(G, i, p));
    if (G.is_htype()) disc_ = CompiledPoly(discrepancy_poly(G, p));
  }
  int m() const override { return m_; }
  int k() const override { return k_; }
  bool symbolic() const override { return true; }
  double value(std::span<const double> z, std::span<const double> t) const override { return u_(z, t); }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    FieldSample s;
    s.u = u_(z, t);
    s.zu = zu_(z, t);
    s.disc = disc_.empty() ? 0.0 : disc_(z, t);
    s.n = m_;
    for (int i = 0; i < m_; ++i) s.grad[i] = x_[i](z, t);
    return s;
  }

 private:
  int m_, k_;
  CompiledPoly u_, zu_, disc_;
  std::vector<CompiledPoly> x_;
};

class GroupFnField final : public Field {
 public:
  GroupFnField(const GroupSpec& G, ScalarFn u, GradFn grad) : G_(G), u_(std::move(u)), grad_(std::move(grad)) {
    check_horizontal(G.m());
  }
  int m() const override { return G_.m(); }
  int k() const override { return G_.k(); }
  double value(std::span<const double> z, std::span<const double> t) const override { return u_(z, t); }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    const int m = G_.m(), k = G_.k();
    double gz[kMaxHorizontal], gt[64], jz[kMaxHorizontal];
    std::span<double> sgz(gz, m), sgt(gt, k);
    if (grad_)
      grad_(z, t, sgz, sgt);
    else
      fd_gradient(u_, z, t, sgz, sgt);
    FieldSample s;
    s.u = u_(z, t);
    s.n = m;
    for (int i = 0; i < m; ++i) s.grad[i] = gz[i];
    for (int l = 0; l < k; ++l) {
      for (int i = 0; i < m; ++i) {
        double v = 0;
        for (int j = 0; j < m; ++j) v += G_.Jd(l, i, j) * z[j];
        jz[i] = v;
        s.grad[i] += 0.5 * v * gt[l];
      }
      double th = 0;
      for (int i = 0; i < m; ++i) th += jz[i] * gz[i];
      s.disc += t[l] * th;
    }
    for (int i = 0; i < m; ++i) s.zu += z[i] * gz[i];
    for (int l = 0; l < k; ++l) s.zu += 2 * t[l] * gt[l];
    return s;
  }

 private:
  GroupSpec G_;
  ScalarFn u_;
  GradFn grad_;
};

class BaouendiPolyField final : public Field {
 public:
  BaouendiPolyField(const BaouendiSpec& spec, const Polynomial& p) : spec_(spec), u_(p) {
    if (p.m() != spec.m || p.k() != spec.k) fail(ErrorCode::DimensionMismatch, "polynomial does not match spec");
    check_horizontal(spec.m + spec.k);
    for (int i = 0; i < spec.m; ++i) dz_.emplace_back(p.d_z(i));
    for (int l = 0; l < spec.k; ++l) dt_.emplace_back(p.d_t(l));
  }
  int m() const override { return spec_.m; }
  int k() const override { return spec_.k; }
  bool symbolic() const override { return true; }
  double value(std::span<const double> z, std::span<const double> t) const override { return u_(z, t); }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    double gz[kMaxHorizontal], gt[kMaxHorizontal];
    for (int i = 0; i < spec_.m; ++i) gz[i] = dz_[i](z, t);
    for (int l = 0; l < spec_.k; ++l) gt[l] = dt_[l](z, t);
    return baouendi_sample(spec_, u_(z, t), z, t, gz, gt);
  }
  static FieldSample baouendi_sample(const BaouendiSpec& spec, double u, std::span<const double> z,
                                     std::span<const double> t, const double* gz, const double* gt) {
    FieldSample s;
    s.u = u;
    s.n = spec.m + spec.k;
    double z2 = 0;
    for (int i = 0; i < spec.m; ++i) z2 += z[i] * z[i];
    const double c = 0.5 * std::pow(z2, 0.5 * spec.alpha);
    for (int i = 0; i < spec.m; ++i) {
      s.grad[i] = gz[i];
      s.zu += z[i] * gz[i];
    }
    for (int l = 0; l < spec.k; ++l) {
      s.grad[spec.m + l] = c * gt[l];
      s.zu += spec.a() * t[l] * gt[l];
    }
    return s;
  }

 private:
  BaouendiSpec spec_;
  CompiledPoly u_;
  std::vector<CompiledPoly> dz_, dt_;
};

class BaouendiFnField final : public Field {
 public:
  BaouendiFnField(const BaouendiSpec& spec, ScalarFn u, GradFn grad)
      : spec_(spec), u_(std::move(u)), grad_(std::move(grad)) {
    check_horizontal(spec.m + spec.k);
  }
  int m() const override { return spec_.m; }
  int k() const override { return spec_.k; }
  double value(std::span<const double> z, std::span<const double> t) const override { return u_(z, t); }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    double gz[kMaxHorizontal], gt[kMaxHorizontal];
    std::span<double> sgz(gz, spec_.m), sgt(gt, spec_.k);
    if (grad_)
      grad_(z, t, sgz, sgt);
    else
      fd_gradient(u_, z, t, sgz, sgt);
    return BaouendiPolyField::baouendi_sample(spec_, u_(z, t), z, t, gz, gt);
  }

 private:
  BaouendiSpec spec_;
  ScalarFn u_;
  GradFn grad_;
};

class DifferenceField final : public Field {
 public:
  DifferenceField(FieldPtr a, FieldPtr b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_->m() != b_->m() || a_->k() != b_->k()) fail(ErrorCode::DimensionMismatch, "fields differ in dimension");
  }
  int m() const override { return a_->m(); }
  int k() const override { return a_->k(); }
  bool symbolic() const override { return a_->symbolic() && b_->symbolic(); }
  double value(std::span<const double> z, std::span<const double> t) const override {
    return a_->value(z, t) - b_->value(z, t);
  }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    FieldSample s = a_->sample(z, t);
    FieldSample o = b_->sample(z, t);
    s.u -= o.u;
    s.zu -= o.zu;
    s.disc -= o.disc;
    for (int i = 0; i < s.n; ++i) s.grad[i] -= o.grad[i];
    return s;
  }

 private:
  FieldPtr a_, b_;
};

class DilatedField final : public Field {
 public:
  DilatedField(FieldPtr u, double lambda, const GaugeGeometry& geo) : u_(std::move(u)), lambda_(lambda), geo_(geo) {
    if (!(lambda > 0)) fail(ErrorCode::NonPositiveLambda, "dilation factor must be positive");
    la_ = std::pow(lambda_, geo_.a());
  }
  int m() const override { return u_->m(); }
  int k() const override { return u_->k(); }
  double value(std::span<const double> z, std::span<const double> t) const override {
    double zz[kMaxHorizontal], tt[64];
    map(z, t, zz, tt);
    return u_->value({zz, z.size()}, {tt, t.size()});
  }
  FieldSample sample(std::span<const double> z, std::span<const double> t) const override {
    double zz[kMaxHorizontal], tt[64];
    map(z, t, zz, tt);
    FieldSample s = u_->sample({zz, z.size()}, {tt, t.size()});
    // Horizontal fields are homogeneous of degree one; Z and Theta of degree
    // zero; the t factor in the discrepancy scales like lambda^{-a}.
    for (int i = 0; i < s.n; ++i) s.grad[i] *= lambda_;
    s.disc /= la_;
    return s;
  }

 private:
  void map(std::span<const double> z, std::span<const double> t, double* zz, double* tt) const {
    for (std::size_t i = 0; i < z.size(); ++i) zz[i] = lambda_ * z[i];
    for (std::size_t l = 0; l < t.size(); ++l) tt[l] = la_ * t[l];
  }
  FieldPtr u_;
  double lambda_;
  double la_;
  GaugeGeometry geo_;
};

}  // namespace

void fd_gradient(const ScalarFn& u, std::span<const double> z, std::span<const double> t, std::span<double> gz,
                 std::span<double> gt) {
  double norm = 0;
  for (double v : z) norm += v * v;
  for (double v : t) norm += v * v;
  const double h = 1e-5 * (1 + std::sqrt(norm));
  std::vector<double> zz(z.begin(), z.end()), tt(t.begin(), t.end());
  for (std::size_t i = 0; i < z.size(); ++i) {
    zz[i] = z[i] + h;
    double up = u(zz, tt);
    zz[i] = z[i] - h;
    double dn = u(zz, tt);
    zz[i] = z[i];
    gz[i] = (up - dn) / (2 * h);
  }
  for (std::size_t l = 0; l < t.size(); ++l) {
    tt[l] = t[l] + h;
    double up = u(zz, tt);
    tt[l] = t[l] - h;
    double dn = u(zz, tt);
    tt[l] = t[l];
    gt[l] = (up - dn) / (2 * h);
  }
}

FieldPtr group_poly_field(const GroupSpec& G, const Polynomial& p) {
  if (p.m() != G.m() || p.k() != G.k()) fail(ErrorCode::DimensionMismatch, "polynomial does not match group");
  return std::make_shared<GroupPolyField>(G, p);
}

FieldPtr group_poly_field(const GroupSpec& G, const Polynomial& p, const RPoint& center) {
  return group_poly_field(G, compose_left_translation(G, center, p));
}

FieldPtr group_fn_field(const GroupSpec& G, ScalarFn u, GradFn grad) {
  return std::make_shared<GroupFnField>(G, std::move(u), std::move(grad));
}

FieldPtr group_fn_field(const GroupSpec& G, ScalarFn u, const Point& center) {
  if (static_cast<int>(center.z.size()) != G.m() || static_cast<int>(center.t.size()) != G.k())
    fail(ErrorCode::DimensionMismatch, "center does not match group dimensions");
  auto shifted = [G, u = std::move(u), center](std::span<const double> z, std::span<const double> t) {
    Point h{std::vector<double>(z.begin(), z.end()), std::vector<double>(t.begin(), t.end())};
    Point g = group_product(G, center, h);
    return u(g.z, g.t);
  };
  return std::make_shared<GroupFnField>(G, shifted, GradFn{});
}

FieldPtr baouendi_poly_field(const BaouendiSpec& spec, const Polynomial& p) {
  return std::make_shared<BaouendiPolyField>(spec, p);
}

FieldPtr baouendi_fn_field(const BaouendiSpec& spec, ScalarFn u, GradFn grad) {
  return std::make_shared<BaouendiFnField>(spec, std::move(u), std::move(grad));
}

FieldPtr difference_field(FieldPtr a, FieldPtr b) {
  return std::make_shared<DifferenceField>(std::move(a), std::move(b));
}

FieldPtr dilated_field(FieldPtr u, double lambda, const GaugeGeometry& geo) {
  return std::make_shared<DilatedField>(std::move(u), lambda, geo);
}

}  // namespace cfreq
