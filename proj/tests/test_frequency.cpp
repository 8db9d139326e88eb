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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "carnotfreq/field.hpp"
#include "carnotfreq/fixtures.hpp"
#include "carnotfreq/frequency.hpp"
#include "carnotfreq/io.hpp"
#include "carnotfreq/operators.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace cfreq;

namespace {

struct H1 : ::testing::Test {
  GroupSpec G = GroupSpec::heisenberg(1);
  SphereRule rule = build_sphere_rule(G, 24);
  FieldPtr field(const Polynomial& p) const { return group_poly_field(G, p); }
};

// Lebesgue volume of the H^1 gauge ball: int_0^r 2 pi s sqrt(r^4 - s^4) / 2 ds = pi^2 r^4 / 8.
double h1_ball_volume(double r) { return std::numbers::pi * std::numbers::pi * std::pow(r, 4) / 8; }

}  // namespace

TEST_F(H1, DirichletHeightFrequencyOfX) {
  auto u = field(fixtures::h1_x());
  for (double r : {0.5, 1.0, 1.7}) {
    // |grad_H x| = 1, so D is the ball volume; H = r D for a degree one harmonic.
    EXPECT_NEAR(dirichlet(*u, r, rule) / h1_ball_volume(r), 1.0, 1e-12);
    EXPECT_NEAR(height(*u, r, rule) / (r * h1_ball_volume(r)), 1.0, 1e-12);
    EXPECT_NEAR(frequency(*u, r, rule), 1.0, 1e-12);
  }
}

TEST_F(H1, FrequencyOfHomogeneousHarmonicsIsTheDegree) {
  for (int kappa = 1; kappa <= 4; ++kappa)
    for (const Polynomial& p : harmonic_basis(G, kappa)) {
      auto u = field(p);
      for (double r : {0.4, 1.3}) {
        EXPECT_NEAR(frequency(*u, r, rule), kappa, 1e-10) << poly_to_json(p);
        EXPECT_NEAR(dirichlet_surface_form(*u, r, rule) / dirichlet(*u, r, rule), 1.0, 1e-10);
        EXPECT_NEAR(homogeneity_defect(*u, kappa, r, rule), 0.0, 1e-12);
      }
    }
}

TEST_F(H1, SurfaceFormDiffersForNonHarmonic) {
  // Delta_H |z|^2 = 4, so the surface form exceeds D by int_{B_r} 4 |z|^2 = 2 pi r^6 / 3.
  auto u = field(z_norm_sq(2, 1));
  const double r = 1.0;
  const double D = dirichlet(*u, r, rule), I = dirichlet_surface_form(*u, r, rule);
  EXPECT_GT(std::abs(D - I), 1e-2 * std::abs(D));
  EXPECT_NEAR(I - D, 2 * std::numbers::pi / 3, 1e-10);
}

TEST_F(H1, WeissAndMonneauExamples) {
  auto t = field(fixtures::h1_t());
  for (double r : {0.5, 1.5}) {
    EXPECT_NEAR(weiss(*t, 2.0, r, rule), 0.0, 1e-12);
    // kappa below the degree gives W = (N - kappa) H / r^{Q-1+2 kappa} > 0.
    EXPECT_NEAR(weiss(*t, 1.0, r, rule), height(*t, r, rule) / std::pow(r, 5), 1e-12);
  }
  auto x = field(fixtures::h1_x());
  for (double r : {0.5, 1.0, 2.0}) EXPECT_NEAR(monneau(*x, 2.0, r, rule), h1_ball_volume(1.0) / (r * r), 1e-12);
  EXPECT_NEAR(monneau(G, fixtures::h1_t(), fixtures::h1_t(), 2.0, 1.0, rule), 0.0, 1e-15);
  Polynomial u = fixtures::h1_t() + fixtures::h1_cylindrical_quartic();
  EXPECT_NEAR(monneau(G, u, fixtures::h1_t(), 2.0, 1.0, rule),
              height(*field(fixtures::h1_cylindrical_quartic()), 1.0, rule), 1e-12);
  EXPECT_CF_ERROR(monneau(G, fixtures::h1_x(), Polynomial(2, 1), 1.0, 1.0, rule), ErrorCode::DiscrepancyNonzero);
  EXPECT_CF_ERROR(monneau(G, fixtures::h1_t(), fixtures::h1_x(), 1.0, 1.0, rule), ErrorCode::DiscrepancyNonzero);
}

TEST_F(H1, DoublingExponent) {
  for (auto [p, kappa] : {std::pair{fixtures::h1_x(), 1}, std::pair{fixtures::h1_t(), 2},
                          std::pair{fixtures::h1_cylindrical_quartic(), 4}})
    EXPECT_NEAR(doubling_ratio(*field(p), 0.6, rule) / std::pow(2.0, 4 + 2 * kappa), 1.0, 1e-10);
  EXPECT_CF_ERROR(doubling_ratio(*field(Polynomial(2, 1)), 0.6, rule), ErrorCode::ZeroDenominator);
}

TEST_F(H1, HeightIdentityOnRandomHarmonics) {
  gen::Stream s(17);
  auto radii = geometric_radii(0.3, 1.5, 5);
  for (int n = 0; n < 8; ++n) {
    Polynomial p = Polynomial::constant(2, 1, 1);
    for (int kappa = 1; kappa <= 4; ++kappa)
      for (const Polynomial& h : harmonic_basis(G, kappa)) p = p + h * s.rational();
    EXPECT_LT(check_H_identity(*field(p), radii, rule).max_residual(), 1e-5);
  }
}

TEST_F(H1, FirstVariationNeedsDiscrepancyTerm) {
  auto radii = geometric_radii(0.3, 1.5, 6);
  for (const Polynomial& p : {fixtures::h1_t(), fixtures::h1_cylindrical_quartic()}) {
    auto v = check_D_variation(*field(p), radii, rule);
    EXPECT_LT(v.max_full(), 1e-5);
    EXPECT_LT(v.max_truncated(), 1e-5);
  }
  auto mixed = check_D_variation(*field(fixtures::h1_mixed_cubic()), radii, rule);
  EXPECT_LT(mixed.max_full(), 1e-5);
  EXPECT_GT(mixed.max_truncated(), 0.1);
  // For u = x the extra term integrates to zero against Zu, so the truncated form also holds.
  auto x = check_D_variation(*field(fixtures::h1_x()), radii, rule);
  EXPECT_LT(x.max_truncated(), 1e-5);
  EXPECT_GT(discrepancy_norm(*field(fixtures::h1_x()), 1.0, rule), 0.1);
  EXPECT_NEAR(discrepancy_norm(*field(fixtures::h1_t()), 1.0, rule), 0.0, 1e-15);
}

TEST_F(H1, WeissAndMonneauDerivatives) {
  auto radii = geometric_radii(0.4, 1.6, 5);
  Polynomial p = fixtures::h1_t() + fixtures::h1_cylindrical_quartic() * Rational(1, 10);
  auto u = field(p);
  auto w = check_weiss_derivative(*u, 2.0, radii, rule);
  EXPECT_LT(w.max_residual(), 1e-6);
  for (double v : w.lhs) EXPECT_GE(v, -1e-12);
  auto diff = field(fixtures::h1_cylindrical_quartic() * Rational(1, 10));
  EXPECT_LT(check_monneau_derivative(*u, *diff, 2.0, radii, rule).max_residual(), 1e-6);
}

TEST_F(H1, RadialExponential) {
  for (double eps : {0.25, 0.5, 1.0})
    for (double r : {0.5, 1.0, 2.0})
      EXPECT_NEAR(frequency_radial_exponential(G, eps, r, rule) / (eps * std::pow(r, -eps)), 1.0, 1e-8);
  EXPECT_CF_ERROR(frequency_radial_exponential(G, 0.0, 1.0, rule), ErrorCode::InvalidArgument);
}

TEST_F(H1, TranslationInvariance) {
  gen::Stream s(5);
  for (int n = 0; n < 4; ++n) {
    Polynomial p = s.polynomial(2, 1, 4, 2, 1) + Polynomial::constant(2, 1, 1);
    RPoint g0 = s.rpoint(G);
    auto centered = group_poly_field(G, p, g0);
    auto composed = field(compose_left_translation(G, g0, p));
    Point g{{g0.z[0].get_d(), g0.z[1].get_d()}, {g0.t[0].get_d()}};
    auto fn = group_fn_field(G, [c = std::make_shared<CompiledPoly>(p)](auto z, auto t) { return (*c)(z, t); }, g);
    for (double r : {0.5, 1.1}) {
      const double N = frequency(*composed, r, rule);
      EXPECT_NEAR(frequency(*centered, r, rule), N, 1e-11 * std::max(1.0, std::abs(N)));
      EXPECT_NEAR(frequency(*fn, r, rule), N, 1e-6 * std::max(1.0, std::abs(N)));
    }
  }
}

TEST_F(H1, DilationCovariance) {
  auto u = field(fixtures::h1_x() + fixtures::h1_t() + fixtures::h1_cylindrical_quartic());
  for (double lam : {0.5, 2.0}) {
    auto ul = dilated_field(u, lam, rule.geo);
    for (double r : {0.3, 0.9}) EXPECT_NEAR(frequency(*ul, r, rule), frequency(*u, lam * r, rule), 1e-11);
  }
}

TEST_F(H1, ZeroHeightAndCurve) {
  auto zero = field(Polynomial(2, 1));
  EXPECT_CF_ERROR(frequency(*zero, 1.0, rule), ErrorCode::ZeroHeight);
  FrequencyCurve c = frequency_curve(*zero, geometric_radii(0.5, 1.0, 3), rule);
  EXPECT_EQ(c.zero_height, 3);
  for (double v : c.N) EXPECT_TRUE(std::isnan(v));
  EXPECT_NEAR(estimate_kappa(*field(fixtures::h1_t()), 0.25, rule).kappa, 2.0, 0.0);
  KappaEstimate e = estimate_kappa(*field(fixtures::h1_x() + fixtures::h1_t()), 0.1, rule);
  EXPECT_EQ(e.kappa, 1.0);
  EXPECT_TRUE(e.snapped);
  KappaEstimate far = estimate_kappa(*field(fixtures::h1_x() + fixtures::h1_t()), 1.0, rule);
  EXPECT_FALSE(far.snapped);
  EXPECT_EQ(far.kappa, far.raw);
}

TEST_F(H1, CurveColumnsAreConsistent) {
  auto u = field(fixtures::h1_t() + fixtures::h1_cylindrical_quartic());
  CurveOptions opts;
  opts.kappa = 2.0;
  opts.u_minus_p = field(fixtures::h1_cylindrical_quartic());
  auto radii = geometric_radii(0.25, 2.0, 8);
  FrequencyCurve c = frequency_curve(*u, radii, rule, opts);
  ASSERT_EQ(c.r.size(), radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    EXPECT_NEAR(c.N[i], radii[i] * c.D[i] / c.H[i], 1e-12 * c.N[i]);
    EXPECT_NEAR(c.W[i], weiss(*u, 2.0, radii[i], rule), 1e-12 * std::max(1.0, std::abs(c.W[i])));
    EXPECT_NEAR(c.M[i], monneau(*opts.u_minus_p, 2.0, radii[i], rule), 1e-12 * std::max(1.0, c.M[i]));
    if (i > 0) {
      EXPECT_GE(c.N[i], c.N[i - 1]);
      EXPECT_GE(c.W[i], c.W[i - 1]);
      EXPECT_GE(c.M[i], c.M[i - 1]);
    }
  }
  EXPECT_EQ(geometric_radii(1.0, 4.0, 3), (std::vector<double>{1.0, 2.0, 4.0}));
  EXPECT_CF_ERROR(geometric_radii(0.0, 1.0, 3), ErrorCode::InvalidArgument);
  EXPECT_CF_ERROR(geometric_radii(2.0, 1.0, 3), ErrorCode::InvalidArgument);
}

TEST(Frequency, MonotoneOnRandomCylindricalHarmonics) {
  for (const GroupSpec& G : {GroupSpec::heisenberg(1), GroupSpec::heisenberg(2)}) {
    SphereRule rule = build_sphere_rule(G, G.m() == 2 ? 16 : 6);
    const int m = G.m();
    std::vector<Polynomial> pool{Polynomial::constant(m, 1, 1), Polynomial::t(m, 1, 0)};
    if (m == 2) {
      pool.push_back(fixtures::h1_cylindrical_quartic());
    } else {
      // |w_1|^2 - |w_2|^2 with z = (x_1, x_2, y_1, y_2), and its product with t.
      Polynomial w = Polynomial::z(4, 1, 0).pow(2) + Polynomial::z(4, 1, 2).pow(2) - Polynomial::z(4, 1, 1).pow(2) -
                     Polynomial::z(4, 1, 3).pow(2);
      pool.push_back(w);
      pool.push_back(w * Polynomial::t(4, 1, 0));
    }
    for (const Polynomial& h : pool) ASSERT_TRUE(sublaplacian(G, h).is_zero());
    gen::Stream s(99);
    for (int n = 0; n < 3; ++n) {
      Polynomial p(G.m(), G.k());
      for (const Polynomial& h : pool) p = p + h * s.rational();
      ASSERT_TRUE(discrepancy_poly(G, p).is_zero());
      if (p.is_zero()) continue;
      auto u = group_poly_field(G, p);
      double prev = -INFINITY;
      for (double r : geometric_radii(0.2, 2.0, 6)) {
        double N = frequency(*u, r, rule);
        EXPECT_GE(N, prev - 1e-9) << poly_to_json(p);
        prev = N;
      }
    }
  }
}

TEST(Frequency, FieldErrors) {
  GroupSpec G = GroupSpec::heisenberg(1);
  SphereRule r2 = build_sphere_rule(GroupSpec::heisenberg(2), 6);
  EXPECT_CF_ERROR(frequency(*group_poly_field(G, fixtures::h1_x()), 1.0, r2), ErrorCode::DimensionMismatch);
  EXPECT_CF_ERROR(group_poly_field(G, Polynomial(4, 1)), ErrorCode::DimensionMismatch);
}
