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

#include "carnotfreq/carnotfreq.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>

#include "carnotfreq/baouendi.hpp"
#include "carnotfreq/errors.hpp"
#include "carnotfreq/fd_solver.hpp"
#include "carnotfreq/frequency.hpp"
#include "carnotfreq/io.hpp"
#include "carnotfreq/operators.hpp"
#include "carnotfreq/verify.hpp"

struct cf_group {
  cfreq::GroupSpec G;
};
struct cf_poly {
  cfreq::Polynomial p;
};
struct cf_rule {
  cfreq::SphereRule rule;
};
struct cf_problem {
  cfreq::BaouendiProblem pr;
};
struct cf_grid {
  cfreq::GridSolution sol;
};
struct cf_curve {
  cfreq::FrequencyCurve c;
};
struct cf_report {
  cfreq::VerifyReport r;
};

namespace {

using namespace cfreq;

static_assert(static_cast<int>(ErrorCode::InvalidArgument) == CF_INVALID_ARGUMENT);

thread_local std::string g_last_error;

template <class F>
cf_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<cf_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CF_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CF_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RPoint parse_center(const char* text, int m, int k) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (static_cast<int>(v.size()) != m + k)
    fail(ErrorCode::DimensionMismatch, "center needs " + std::to_string(m + k) + " coordinates");
  RPoint g;
  g.z.assign(v.begin(), v.begin() + m);
  g.t.assign(v.begin() + m, v.end());
  return g;
}

std::vector<double> radii_of(const cf_curve_options& o) { return geometric_radii(o.rmin, o.rmax, o.steps); }

FieldPtr baouendi_field(const cf_problem* p, const cf_grid* grid, const cf_poly* u) {
  require(p, "null problem");
  if (u) return baouendi_poly_field(p->pr.spec, u->p);
  require(grid, "either a grid or a polynomial is required");
  return grid_field(grid->sol);
}

double kappa_for(const Field& f, const cf_curve_options& o, const SphereRule& rule) {
  if (o.has_kappa) return o.kappa;
  return estimate_kappa(f, o.rmin, rule).kappa;
}

std::string residual_csv(const IdentityResiduals& res, const std::vector<double>& values, const char* header) {
  std::string out = header;
  out += "\n";
  for (std::size_t i = 0; i < res.radii.size(); ++i) {
    out += format_double(res.radii[i]) + "," + format_double(values[i]) + "," + format_double(res.lhs[i]) + "," +
           format_double(res.rhs[i]) + "," + format_double(res.residual[i]) + "\n";
  }
  return out;
}

}  // namespace

extern "C" {

const char* cf_last_error(void) { return g_last_error.c_str(); }

const char* cf_status_name(cf_status status) {
  if (status == CF_INTERNAL_ERROR) return "InternalError";
  if (status < CF_OK || status > CF_INVALID_ARGUMENT) return "Unknown";
  return error_name(static_cast<ErrorCode>(status));
}

const char* cf_version(void) { return "0.1.0"; }

void cf_string_free(char* s) { std::free(s); }

void cf_set_fault(cf_fault fault) { set_fault(fault == CF_FAULT_PSI_SIGN ? Fault::PsiSign : Fault::None); }

cf_status cf_group_from_json(const char* text, cf_group** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new cf_group{group_from_json(text)};
  });
}

cf_status cf_group_heisenberg(int n, cf_group** out) {
  return guard([&] {
    require(out, "null argument");
    *out = new cf_group{GroupSpec::heisenberg(n)};
  });
}

cf_status cf_group_make(int m, int k, const double* J, cf_group** out) {
  return guard([&] {
    require(J && out && m > 0 && k > 0, "invalid argument");
    std::vector<std::vector<std::vector<double>>> mats(k, std::vector<std::vector<double>>(m, std::vector<double>(m)));
    for (int l = 0; l < k; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) mats[l][i][j] = J[(l * m + i) * m + j];
    *out = new cf_group{GroupSpec::make(m, k, mats)};
  });
}

cf_status cf_group_info_get(const cf_group* g, cf_group_info* out) {
  return guard([&] {
    require(g && out, "null argument");
    Classification c = g->G.classify();
    *out = cf_group_info{g->G.m(), g->G.k(), g->G.N(), g->G.Q(), c.is_htype, c.is_metivier, c.metivier_exact,
                         c.min_singular_value, c.samples};
  });
}

cf_status cf_group_to_json(const cf_group* g, char** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = dup(group_to_json(g->G));
  });
}

void cf_group_free(cf_group* g) { delete g; }

cf_status cf_poly_from_json(const char* text, int m, int k, cf_poly** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new cf_poly{poly_from_json(text, m, k)};
  });
}

cf_status cf_poly_to_json(const cf_poly* p, char** out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = dup(poly_to_json(p->p));
  });
}

int cf_poly_is_zero(const cf_poly* p) { return p && p->p.is_zero(); }

cf_status cf_poly_apply(const cf_group* g, cf_poly_op op, int index, const cf_poly* p, cf_poly** out) {
  return guard([&] {
    require(g && p && out, "null argument");
    const GroupSpec& G = g->G;
    Polynomial r;
    switch (op) {
      case CF_OP_X: r = apply_X(G, index, p->p); break;
      case CF_OP_THETA: r = apply_theta(G, index, p->p); break;
      case CF_OP_SUBLAPLACIAN: r = sublaplacian(G, p->p); break;
      case CF_OP_EULER: r = euler_Z(G, p->p); break;
      case CF_OP_DISCREPANCY: r = discrepancy_poly(G, p->p); break;
      case CF_OP_HGRAD_SQ: r = horizontal_grad_sq(G, p->p); break;
      default: fail(ErrorCode::InvalidArgument, "unknown operator");
    }
    *out = new cf_poly{std::move(r)};
  });
}

cf_status cf_harmonic_basis_json(const cf_group* g, int kappa, char** out) {
  return guard([&] {
    require(g && out, "null argument");
    require(kappa >= 0, "kappa must be nonnegative");
    std::string s = "[";
    bool first = true;
    for (const Polynomial& p : harmonic_basis(g->G, kappa)) {
      if (!first) s += ",\n";
      s += poly_to_json(p);
      first = false;
    }
    *out = dup(s + "]\n");
  });
}

void cf_poly_free(cf_poly* p) { delete p; }

cf_status cf_rule_group(const cf_group* g, int resolution, const char* cache_dir, cf_rule** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = new cf_rule{cache_dir ? cached_sphere_rule(g->G, resolution, cache_dir)
                                 : build_sphere_rule(g->G, resolution)};
  });
}

cf_status cf_rule_baouendi(int m, int k, double alpha, int resolution, const char* cache_dir, cf_rule** out) {
  return guard([&] {
    require(out, "null argument");
    BaouendiSpec spec = BaouendiSpec::make(m, k, alpha);
    *out = new cf_rule{cache_dir ? cached_sphere_rule(spec, resolution, cache_dir)
                                 : build_sphere_rule(spec, resolution)};
  });
}

size_t cf_rule_size(const cf_rule* r) { return r ? r->rule.size() : 0; }

void cf_rule_free(cf_rule* r) { delete r; }

cf_status cf_frequency_curve(const cf_group* g, const cf_poly* u, const cf_rule* rule, const cf_curve_options* opts,
                             cf_curve** out) {
  return guard([&] {
    require(g && u && rule && opts && out, "null argument");
    const GroupSpec& G = g->G;
    RPoint center;
    if (opts->center) center = parse_center(opts->center, G.m(), G.k());
    auto field = [&](const Polynomial& p) {
      return opts->center ? group_poly_field(G, p, center) : group_poly_field(G, p);
    };
    CurveOptions co;
    if (opts->has_kappa) co.kappa = opts->kappa;
    if (opts->monneau_p) {
      require(opts->has_kappa, "the Monneau column needs kappa");
      if (!discrepancy_poly(G, u->p).is_zero() || !discrepancy_poly(G, opts->monneau_p->p).is_zero())
        fail(ErrorCode::DiscrepancyNonzero, "Monneau functional needs vanishing discrepancy of u and P");
      co.u_minus_p = field(u->p - opts->monneau_p->p);
    }
    FrequencyCurve c = frequency_curve(*field(u->p), radii_of(*opts), rule->rule, co);
    c.description = "group m=" + std::to_string(G.m()) + " k=" + std::to_string(G.k()) +
                    " resolution=" + std::to_string(rule->rule.resolution);
    *out = new cf_curve{std::move(c)};
  });
}

size_t cf_curve_size(const cf_curve* c) { return c ? c->c.r.size() : 0; }

cf_status cf_curve_row_get(const cf_curve* c, size_t i, cf_curve_row* out) {
  return guard([&] {
    require(c && out, "null argument");
    if (i >= c->c.r.size()) fail(ErrorCode::IndexOutOfRange, "row index out of range");
    const FrequencyCurve& f = c->c;
    *out = cf_curve_row{f.r[i], f.D[i], f.H[i], f.N[i], f.W[i], f.M[i], f.disc[i]};
  });
}

int cf_curve_zero_height(const cf_curve* c) { return c ? c->c.zero_height : 0; }

cf_status cf_curve_to_csv(const cf_curve* c, char** out) {
  return guard([&] {
    require(c && out, "null argument");
    *out = dup(curve_to_csv(c->c));
  });
}

void cf_curve_free(cf_curve* c) { delete c; }

cf_status cf_problem_from_file(const char* path, cf_problem** out) {
  return guard([&] {
    require(path && out, "null argument");
    std::string dir = std::filesystem::path(path).parent_path().string();
    *out = new cf_problem{problem_from_json(read_file(path), dir)};
  });
}

cf_status cf_problem_info_get(const cf_problem* p, cf_problem_info* out) {
  return guard([&] {
    require(p && out, "null argument");
    const BaouendiSpec& s = p->pr.spec;
    *out = cf_problem_info{s.m, s.k, s.alpha, s.Q(), static_cast<int>(p->pr.box.size())};
  });
}

cf_status cf_problem_rule(const cf_problem* p, int resolution, const char* cache_dir, cf_rule** out) {
  if (!p) {
    g_last_error = "null problem";
    return CF_INVALID_ARGUMENT;
  }
  return cf_rule_baouendi(p->pr.spec.m, p->pr.spec.k, p->pr.spec.alpha, resolution, cache_dir, out);
}

void cf_problem_free(cf_problem* p) { delete p; }

cf_status cf_baouendi_solve(const cf_problem* p, cf_grid** out) {
  return guard([&] {
    require(p && out, "null argument");
    CompiledPoly b(p->pr.boundary);
    GridSolution sol = fd_solve(p->pr.spec, p->pr.box, p->pr.grid,
                                [&](std::span<const double> z, std::span<const double> t) { return b(z, t); },
                                p->pr.tol);
    sol.boundary = p->pr.boundary_desc;
    *out = new cf_grid{std::move(sol)};
  });
}

cf_status cf_grid_info_get(const cf_grid* g, cf_grid_info* out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = cf_grid_info{g->sol.iterations, g->sol.residual, discrete_residual(g->sol), g->sol.values.size()};
  });
}

cf_status cf_grid_to_csv(const cf_grid* g, char** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = dup(grid_to_csv(g->sol));
  });
}

void cf_grid_free(cf_grid* g) { delete g; }

cf_status cf_baouendi_curve(const cf_problem* p, const cf_grid* grid, const cf_poly* u, const cf_rule* rule,
                            const cf_curve_options* opts, cf_curve** out) {
  return guard([&] {
    require(rule && opts && out, "null argument");
    FieldPtr f = baouendi_field(p, grid, u);
    CurveOptions co;
    if (opts->has_kappa) co.kappa = opts->kappa;
    if (opts->monneau_p) {
      require(opts->has_kappa, "the Monneau column needs kappa");
      co.u_minus_p = difference_field(f, baouendi_poly_field(p->pr.spec, opts->monneau_p->p));
    }
    FrequencyCurve c = frequency_curve(*f, radii_of(*opts), rule->rule, co);
    c.description = std::string("baouendi ") + (u ? "polynomial" : p->pr.boundary_desc);
    *out = new cf_curve{std::move(c)};
  });
}

cf_status cf_baouendi_ortho(const cf_problem* p, const cf_poly* a, const cf_poly* b, double r, const cf_rule* rule,
                            double* inner, double* norm_a, double* norm_b) {
  return guard([&] {
    require(p && a && b && rule && inner && norm_a && norm_b, "null argument");
    require(r > 0, "radius must be positive");
    auto fa = baouendi_poly_field(p->pr.spec, a->p), fb = baouendi_poly_field(p->pr.spec, b->p);
    *inner = orthogonality_check(*fa, *fb, r, rule->rule);
    *norm_a = std::sqrt(orthogonality_check(*fa, *fa, r, rule->rule));
    *norm_b = std::sqrt(orthogonality_check(*fb, *fb, r, rule->rule));
  });
}

cf_status cf_baouendi_weiss_csv(const cf_problem* p, const cf_grid* grid, const cf_poly* u, const cf_rule* rule,
                                const cf_curve_options* opts, double* kappa_used, char** out) {
  return guard([&] {
    require(rule && opts && kappa_used && out, "null argument");
    FieldPtr f = baouendi_field(p, grid, u);
    const double kappa = kappa_for(*f, *opts, rule->rule);
    auto radii = radii_of(*opts);
    IdentityResiduals res = check_weiss_derivative(*f, kappa, radii, rule->rule);
    std::vector<double> W;
    for (double r : radii) W.push_back(weiss(*f, kappa, r, rule->rule));
    *kappa_used = kappa;
    *out = dup(residual_csv(res, W, "r,W_kappa,dW_dr,rhs,residual"));
  });
}

cf_status cf_baouendi_monneau_csv(const cf_problem* p, const cf_grid* grid, const cf_poly* u, const cf_rule* rule,
                                  const cf_curve_options* opts, double* kappa_used, char** out) {
  return guard([&] {
    require(rule && opts && kappa_used && out, "null argument");
    require(opts->monneau_p, "the Monneau functional needs a polynomial P");
    FieldPtr f = baouendi_field(p, grid, u);
    FieldPtr d = difference_field(f, baouendi_poly_field(p->pr.spec, opts->monneau_p->p));
    const double kappa = kappa_for(*f, *opts, rule->rule);
    auto radii = radii_of(*opts);
    IdentityResiduals res = check_monneau_derivative(*f, *d, kappa, radii, rule->rule);
    std::string s = "r,M_kappa,dM_dr,two_W_over_r,residual,W_u,W_u_minus_P\n";
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      s += format_double(r) + "," + format_double(monneau(*d, kappa, r, rule->rule)) + "," +
           format_double(res.lhs[i]) + "," + format_double(res.rhs[i]) + "," + format_double(res.residual[i]) + "," +
           format_double(weiss(*f, kappa, r, rule->rule)) + "," + format_double(weiss(*d, kappa, r, rule->rule)) +
           "\n";
    }
    *kappa_used = kappa;
    *out = dup(s);
  });
}

cf_status cf_verify_run(const cf_verify_options* opts, cf_report** out) {
  return guard([&] {
    require(out, "null argument");
    VerifyOptions vo;
    if (opts) vo = VerifyOptions{opts->resolution, opts->mc_samples, opts->seed, opts->steps};
    *out = new cf_report{run_verification(vo)};
  });
}

int cf_report_passed(const cf_report* r) { return r && r->r.all_passed(); }

cf_status cf_report_to_json(const cf_report* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = dup(report_to_json(r->r));
  });
}

cf_status cf_report_to_text(const cf_report* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = dup(report_to_text(r->r));
  });
}

void cf_report_free(cf_report* r) { delete r; }

}  // extern "C"
