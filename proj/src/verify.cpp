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

#include "carnotfreq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "carnotfreq/baouendi.hpp"
#include "carnotfreq/errors.hpp"
#include "carnotfreq/fixtures.hpp"
#include "carnotfreq/frequency.hpp"
#include "carnotfreq/io.hpp"
#include "carnotfreq/operators.hpp"
#include "json.hpp"

namespace cfreq {

namespace {

using Check = std::function<CheckResult()>;

CheckResult make(std::string name, double value, double tol, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tol;
  c.passed = std::isfinite(value) && value <= tol;
  c.detail = std::move(detail);
  return c;
}

CheckResult exact(std::string name, bool ok, std::string detail = {}) {
  return make(std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(detail));
}

// Counter-based generator of small random polynomials.
class PolyGen {
 public:
  explicit PolyGen(std::uint64_t seed) : seed_(seed) {}

  Polynomial operator()(int m, int k) {
    Polynomial p(m, k);
    const int nterms = 1 + static_cast<int>(next() % 6);
    for (int n = 0; n < nterms; ++n) {
      Exponents e(m + k);
      for (int i = 0; i < m; ++i) e[i] = static_cast<int>(next() % 4);
      for (int l = 0; l < k; ++l) e[m + l] = static_cast<int>(next() % 3);
      long num = static_cast<long>(next() % 19) - 9;
      long den = 1 + static_cast<long>(next() % 5);
      if (num == 0) num = 1;
      Rational c(num, den);
      c.canonicalize();
      p.add_term(e, c);
    }
    return p;
  }

 private:
  std::uint64_t next() { return splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * ++counter_)); }
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

double worst_decrease(const std::vector<double>& v) {
  double worst = 0;
  for (std::size_t i = 1; i < v.size(); ++i) worst = std::max(worst, v[i - 1] - v[i]);
  return worst;
}

std::string fmt(double v) { return format_double(v); }

std::vector<double> frequencies(const Field& u, const std::vector<double>& radii, const SphereRule& rule) {
  std::vector<double> out;
  for (double r : radii) out.push_back(frequency(u, r, rule));
  return out;
}

constexpr double kMonotoneSlack = 1e-5;
// The H^2 rule has O(resolution^4) nodes; calibration is already exact to 1e-13 at 12.
constexpr int kMaxH2Resolution = 12;

struct Context {
  VerifyOptions opts;
  GroupSpec h1 = GroupSpec::heisenberg(1);
  GroupSpec h2 = GroupSpec::heisenberg(2);
  GroupSpec g42 = fixtures::htype_4_2();
  GroupSpec met = fixtures::metivier_4_1();
  SphereRule r1, r2;
};

void symbolic_checks(Context& cx, std::vector<Check>& out) {
  out.push_back([&cx] {
    PolyGen gen(cx.opts.seed);
    const GroupSpec* groups[] = {&cx.h1, &cx.h2, &cx.g42, &cx.met};
    int bad = 0;
    for (int n = 0; n < 100; ++n) {
      const GroupSpec& G = *groups[n % 4];
      Polynomial p = gen(G.m(), G.k());
      Polynomial Zp = euler_Z(G, p);
      for (int i = 0; i < G.m(); ++i)
        if (apply_X(G, i, Zp) - euler_Z(G, apply_X(G, i, p)) != apply_X(G, i, p)) ++bad;
      Polynomial L = sublaplacian(G, p);
      if (sublaplacian(G, Zp) != euler_Z(G, L) + L * Rational(2)) ++bad;
    }
    return exact("symbolic.euler_commutators", bad == 0, std::to_string(bad) + " failures on 100 random polynomials");
  });
  out.push_back([&cx] {
    bool ok = true;
    for (const GroupSpec* G : {&cx.h1, &cx.h2, &cx.g42, &cx.met})
      ok = ok && z_field_divergence(*G) == Polynomial::constant(G->m(), G->k(), G->Q());
    return exact("symbolic.euler_divergence", ok, "div Z = Q");
  });
  out.push_back([&cx] {
    bool ok = true;
    for (const GroupSpec* G : {&cx.h1, &cx.h2, &cx.g42}) {
      ok = ok && htype_identity_holds(G->m(), G->J());
      Polynomial zz = z_norm_sq(G->m(), G->k());
      for (int l = 0; l < G->k(); ++l)
        for (int lp = 0; lp < G->k(); ++lp) {
          Polynomial s(G->m(), G->k());
          for (int i = 0; i < G->m(); ++i) s = s + Jz_component(*G, l, i) * Jz_component(*G, lp, i);
          ok = ok && s == (l == lp ? zz : Polynomial(G->m(), G->k()));
        }
    }
    return exact("symbolic.htype_inner_products", ok, "H1, H2, m=4 k=2");
  });
  out.push_back([&cx] {
    const int m = 4, k = 2;
    auto z = [&](int i) { return Polynomial::z(m, k, i); };
    Polynomial u = z(0) * z(0) + z(2) * z(2);
    Polynomial expect = Polynomial::t(m, k, 0) * (z(0) * z(1) + z(2) * z(3)) * Rational(-2);
    return exact("symbolic.discrepancy_fixture", discrepancy_poly(cx.g42, u) == expect,
                 "x1^2 + x3^2 on the m=4 k=2 group");
  });
  out.push_back([&cx] {
    auto spec = BaouendiSpec::make(2, 1, 1.0);
    int checked = 0, bad = 0;
    for (int kappa = 0; kappa <= 4; ++kappa)
      for (const Polynomial& p : harmonic_basis(cx.h1, kappa)) {
        if (!discrepancy_poly(cx.h1, p).is_zero()) continue;
        ++checked;
        if (!baouendi_apply(spec, p).is_zero()) ++bad;
      }
    return exact("symbolic.vanishing_discrepancy_solves_baouendi", bad == 0 && checked > 0,
                 std::to_string(checked) + " basis elements with zero discrepancy");
  });
  out.push_back([&cx] {
    bool ok = true;
    for (const GroupSpec* G : {&cx.h1, &cx.h2, &cx.g42}) {
      Polynomial rho4 = z_norm_sq(G->m(), G->k()).pow(2) + t_norm_sq(G->m(), G->k()) * Rational(16);
      Polynomial p = rho4.pow(2) - rho4 * Rational(3) + z_norm_sq(G->m(), G->k()) * Polynomial::t(G->m(), G->k(), 0);
      ok = ok && discrepancy_poly(*G, p).is_zero();
    }
    return exact("symbolic.cylindrical_zero_discrepancy", ok);
  });
  out.push_back([&cx] {
    Classification c = cx.met.classify();
    bool ok = !cx.met.is_htype() && !htype_identity_holds(cx.met.m(), cx.met.J()) && c.is_metivier;
    return exact("symbolic.metivier_not_htype", ok, "m=4 k=1 Metivier group");
  });
  out.push_back([] {
    bool ok = true;
    std::ostringstream d;
    for (auto [al, m, k] : {std::tuple{1, 2, 1}, std::tuple{2, 1, 1}, std::tuple{1, 1, 2}}) {
      auto spec = BaouendiSpec::make(m, k, al);
      Rational A = quadratic_harmonic_constant(spec);
      Rational oracle(4 * (al + 1) * (2 * al + m), k);
      oracle.canonicalize();
      Polynomial P = solid_harmonic_quadratic(spec);
      ok = ok && A == oracle && baouendi_apply(spec, P).is_zero() &&
           z_alpha_apply(spec, P) == P * Rational(2 * (al + 1));
      d << "A(" << al << "," << m << "," << k << ")=" << to_string(A) << " ";
    }
    return exact("symbolic.baouendi_quadratic_constant", ok, d.str());
  });
}

void quadrature_checks(Context& cx, std::vector<Check>& out) {
  for (int which = 0; which < 2; ++which)
    out.push_back([&cx, which] {
      const GroupSpec& G = which == 0 ? cx.h1 : cx.h2;
      const SphereRule& rule = which == 0 ? cx.r1 : cx.r2;
      auto one = [](std::span<const double>, std::span<const double>) { return 1.0; };
      double worst = 0;
      for (double r : {0.5, 1.0, 2.0})
        worst = std::max(worst, std::abs(mean_value(G, one, identity_point(G), r, rule) - 1));
      return make(which == 0 ? "quadrature.mean_value_H1" : "quadrature.mean_value_H2", worst, 1e-4,
                  "M_r 1 = 1 for r in {0.5,1,2}");
    });
  out.push_back([&cx] {
    auto one = [](std::span<const double>, std::span<const double>) { return 1.0; };
    double worst = 0;
    std::ostringstream d;
    for (bool weighted : {true, false}) {
      double q = surface_integral(one, 1.0, cx.r1, weighted);
      MCEstimate e = mc_thin_shell(one, 1.0, 0.01, cx.opts.mc_samples, cx.opts.seed, cx.r1.geo, weighted);
      double sig = std::abs(q - e.value) / e.stderr_;
      worst = std::max(worst, sig);
      d << (weighted ? "psi-weighted " : "plain ") << fmt(q) << " vs " << fmt(e.value)
        << " +- " << fmt(e.stderr_) << "; ";
    }
    return make("quadrature.thin_shell_agreement_sigmas", worst, 3.0, d.str());
  });
}

void group_frequency_checks(Context& cx, std::vector<Check>& out) {
  const GroupSpec& G = cx.h1;
  out.push_back([&cx] {
    auto radii = geometric_radii(0.25, 2.0, cx.opts.steps);
    double worst = 0;
    int count = 0;
    for (int kappa = 1; kappa <= 4; ++kappa)
      for (const Polynomial& p : harmonic_basis(cx.h1, kappa)) {
        ++count;
        auto u = group_poly_field(cx.h1, p);
        for (double N : frequencies(*u, radii, cx.r1)) worst = std::max(worst, std::abs(N - kappa) / kappa);
      }
    return make("frequency.solid_harmonics_constant", worst, 1e-3, std::to_string(count) + " basis elements");
  });
  const std::vector<double> radii{0.5, 0.75, 1.0, 1.25, 1.5};
  for (int which = 0; which < 3; ++which)
    out.push_back([&cx, &G, radii, which] {
      const char* names[] = {"x", "t", "x^2-y^2"};
      Polynomial p = which == 0 ? fixtures::h1_x() : which == 1 ? fixtures::h1_t() : fixtures::h1_x2_minus_y2();
      auto u = group_poly_field(G, p);
      double h = check_H_identity(*u, radii, cx.r1).max_residual();
      double d = check_D_variation(*u, radii, cx.r1).max_full();
      return make(std::string("frequency.first_variation_") + names[which], std::max(h, d), 1e-2,
                  "height residual " + fmt(h) + ", energy residual " + fmt(d));
    });
  out.push_back([&cx, &G, radii] {
    auto u = group_poly_field(G, fixtures::h1_mixed_cubic());
    VariationResiduals v = check_D_variation(*u, radii, cx.r1);
    double ratio = v.max_full() > 0 ? v.max_full() / v.max_truncated() : 0.0;
    return make("frequency.discrepancy_term_required", ratio, 0.1,
                "x + yt - x|z|^2/8: full " + fmt(v.max_full()) + ", truncated " + fmt(v.max_truncated()));
  });
  out.push_back([&cx, &G] {
    auto radii = geometric_radii(0.25, 2.0, cx.opts.steps);
    Polynomial one = Polynomial::constant(2, 1, 1);
    Polynomial u1 = one + fixtures::h1_t();
    Polynomial u2 = fixtures::h1_t() + fixtures::h1_cylindrical_quartic() * Rational(1, 10);
    double w = std::max(worst_decrease(frequencies(*group_poly_field(G, u1), radii, cx.r1)),
                        worst_decrease(frequencies(*group_poly_field(G, u2), radii, cx.r1)));
    return make("frequency.monotone_group", w, kMonotoneSlack, "1 + t and t + P4/10");
  });
  out.push_back([&cx, &G] {
    Polynomial u = fixtures::h1_t() + fixtures::h1_cylindrical_quartic() * Rational(1, 10);
    auto f = group_poly_field(G, u);
    auto radii = geometric_radii(0.5, 1.5, 6);
    IdentityResiduals res = check_weiss_derivative(*f, 2.0, radii, cx.r1);
    std::vector<double> W;
    for (double r : radii) W.push_back(weiss(*f, 2.0, r, cx.r1));
    return make("frequency.weiss_group", std::max(res.max_residual(), worst_decrease(W) > kMonotoneSlack ? 1.0 : 0.0),
                1e-2, "derivative residual " + fmt(res.max_residual()));
  });
  out.push_back([&cx, &G] {
    Polynomial P = fixtures::h1_t();
    Polynomial u = P + fixtures::h1_cylindrical_quartic() * Rational(1, 10);
    auto f = group_poly_field(G, u);
    auto d = group_poly_field(G, u - P);
    auto radii = geometric_radii(0.5, 1.5, 6);
    IdentityResiduals res = check_monneau_derivative(*f, *d, 2.0, radii, cx.r1);
    std::vector<double> M;
    for (double r : radii) M.push_back(monneau(G, u, P, 2.0, r, cx.r1));
    double ww = 0;
    for (double r : radii) ww = std::max(ww, relative_residual(weiss(*f, 2.0, r, cx.r1), weiss(*d, 2.0, r, cx.r1)));
    double v = std::max({res.max_residual(), worst_decrease(M) > kMonotoneSlack ? 1.0 : 0.0, ww * 10});
    return make("frequency.monneau_group", v, 1e-2,
                "derivative residual " + fmt(res.max_residual()) + ", W(u) vs W(u-P) " + fmt(ww));
  });
  out.push_back([&cx, &G] {
    double worst = 0;
    for (double r : {0.5, 1.0, 1.5})
      worst = std::max(worst,
                       relative_residual(frequency_radial_exponential(G, 0.5, r, cx.r1), 0.5 * std::pow(r, -0.5)));
    return make("frequency.radial_exponential", worst, 1e-3, "exp(-rho^-1/2) against 0.5 r^-1/2");
  });
  out.push_back([&cx, &G] {
    Polynomial p = fixtures::h1_x() + fixtures::h1_t();
    auto u = group_poly_field(G, p);
    auto geo = geometry_of(G);
    double worst = 0;
    for (double lam : {0.5, 1.5, 2.0}) {
      auto ul = dilated_field(u, lam, geo);
      for (double r : {0.4, 0.8})
        worst = std::max(worst, relative_residual(frequency(*ul, r, cx.r1), frequency(*u, lam * r, cx.r1)));
    }
    for (auto [q, kappa] : {std::pair{fixtures::h1_x(), 1}, std::pair{fixtures::h1_t(), 2}}) {
      double ratio = doubling_ratio(*group_poly_field(G, q), 0.7, cx.r1);
      worst = std::max(worst, relative_residual(ratio, std::pow(2.0, G.Q() + 2 * kappa)));
    }
    return make("frequency.scaling", worst, 1e-3, "dilation covariance and doubling exponent");
  });
}

void baouendi_checks(Context& cx, std::vector<Check>& out) {
  for (auto [al, m, k] : {std::tuple{1.0, 2, 1}, std::tuple{2.0, 1, 1}})
    out.push_back([&cx, al, m, k] {
      auto spec = BaouendiSpec::make(m, k, al);
      SphereRule rule = build_sphere_rule(spec, cx.opts.resolution);
      Polynomial P = solid_harmonic_quadratic(spec);
      auto f1 = baouendi_poly_field(spec, Polynomial::z(m, k, 0));
      auto f2 = baouendi_poly_field(spec, P);
      double worst_n = 0, worst_o = 0, mono = 0;
      auto radii = geometric_radii(0.25, 2.0, cx.opts.steps);
      auto n1 = frequencies(*f1, radii, rule), n2 = frequencies(*f2, radii, rule);
      for (std::size_t i = 0; i < radii.size(); ++i)
        worst_n = std::max({worst_n, std::abs(n1[i] - 1), std::abs(n2[i] - 2 * spec.a())});
      mono = std::max(worst_decrease(n1), worst_decrease(n2));
      for (double r : {0.5, 1.0}) {
        double norm = std::sqrt(orthogonality_check(*f1, *f1, r, rule) * orthogonality_check(*f2, *f2, r, rule));
        worst_o = std::max(worst_o, std::abs(orthogonality_check(*f1, *f2, r, rule)) / norm);
      }
      std::ostringstream name;
      name << "baouendi.solid_harmonics_alpha" << al << "_m" << m << "_k" << k;
      double v = std::max({worst_n / 1e-4, worst_o / 1e-6, mono / kMonotoneSlack});
      return make(name.str(), v, 1.0,
                  "frequency error " + fmt(worst_n) + ", orthogonality " + fmt(worst_o) + ", decrease " + fmt(mono));
    });
  out.push_back([] {
    auto spec = BaouendiSpec::make(1, 1, 2.0);
    ConstantEstimate a = normalization_constant(spec), b = normalization_constant_flux(spec);
    double rel = relative_residual(a.value, b.value);
    return make("baouendi.normalization_constant", rel, 1e-8, fmt(a.value) + " vs " + fmt(b.value));
  });
  out.push_back([&cx] {
    auto fx = fixtures::baouendi_mixed();
    auto spec = fx.spec;
    SphereRule rule = build_sphere_rule(spec, cx.opts.resolution);
    auto u = grid_field(fx.solution);
    auto pz = baouendi_poly_field(spec, Polynomial::z(1, 1, 0));
    auto diff = difference_field(u, pz);
    auto radii = geometric_radii(0.2, 0.9, cx.opts.steps);
    double mono = worst_decrease(frequencies(*u, radii, rule));
    KappaEstimate kap = estimate_kappa(*u, radii.front(), rule);
    const std::vector<double> probe{0.3, 0.5, 0.7, 0.85};
    double hres = check_H_identity(*u, probe, rule).max_residual();
    double wres = check_weiss_derivative(*u, kap.kappa, probe, rule).max_residual();
    double mres = check_monneau_derivative(*u, *diff, kap.kappa, probe, rule).max_residual();
    std::vector<double> M;
    for (double r : radii) M.push_back(monneau(*diff, kap.kappa, r, rule));
    double ww = 0;
    for (double r : probe)
      ww = std::max(ww, relative_residual(weiss(*u, kap.kappa, r, rule), weiss(*diff, kap.kappa, r, rule)));
    double v = std::max({mono / kMonotoneSlack, hres / 1e-2, wres / 1e-2, mres / 1e-2,
                         worst_decrease(M) / kMonotoneSlack, ww / 1e-3});
    std::ostringstream d;
    d << "kappa " << fmt(kap.kappa) << " (raw " << fmt(kap.raw) << "), decrease " << fmt(mono) << ", height "
      << fmt(hres) << ", weiss " << fmt(wres) << ", monneau " << fmt(mres) << ", W(u) vs W(u-P) " << fmt(ww);
    return make("baouendi.mixed_solution", v, 1.0, d.str());
  });
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.resolution < kMinResolution) fail(ErrorCode::ResolutionTooSmall, "resolution below minimum");
  if (opts.mc_samples < kMinMCSamples) fail(ErrorCode::InsufficientSamples, "too few Monte Carlo samples");
  if (opts.steps < 2) fail(ErrorCode::InvalidArgument, "steps must be at least 2");
  Context cx;
  cx.opts = opts;
  cx.r1 = build_sphere_rule(cx.h1, opts.resolution);
  cx.r2 = build_sphere_rule(cx.h2, std::min(opts.resolution, kMaxH2Resolution));
  std::vector<Check> checks;
  symbolic_checks(cx, checks);
  quadrature_checks(cx, checks);
  group_frequency_checks(cx, checks);
  baouendi_checks(cx, checks);
  VerifyReport report;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      report.checks.push_back(checks[i]());
    } catch (const std::exception& e) {
      CheckResult c;
      c.name = "check_" + std::to_string(i);
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.detail = e.what();
      report.checks.push_back(c);
    }
  }
  return report;
}

std::string report_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["passed"] = report.all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
    e["tolerance"] = c.tolerance;
    e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const VerifyReport& report) {
  std::ostringstream os;
  int failed = 0;
  for (const CheckResult& c : report.checks) {
    if (!c.passed) ++failed;
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << fmt(c.value) << " tol=" << fmt(c.tolerance);
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  os << (failed == 0 ? "all " + std::to_string(report.checks.size()) + " checks passed"
                     : std::to_string(failed) + " of " + std::to_string(report.checks.size()) + " checks failed")
     << "\n";
  return os.str();
}

}  // namespace cfreq
