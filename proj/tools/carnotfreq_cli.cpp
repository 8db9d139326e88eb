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

// Command line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "carnotfreq/carnotfreq.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cf_status s) {
  if (s == CF_OK) return;
  std::string msg = cf_last_error(), name = cf_status_name(s);
  throw InputError(msg.rfind(name, 0) == 0 ? msg : name + ": " + msg);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Group = std::unique_ptr<cf_group, Deleter<cf_group, cf_group_free>>;
using Poly = std::unique_ptr<cf_poly, Deleter<cf_poly, cf_poly_free>>;
using Rule = std::unique_ptr<cf_rule, Deleter<cf_rule, cf_rule_free>>;
using Problem = std::unique_ptr<cf_problem, Deleter<cf_problem, cf_problem_free>>;
using Grid = std::unique_ptr<cf_grid, Deleter<cf_grid, cf_grid_free>>;
using Curve = std::unique_ptr<cf_curve, Deleter<cf_curve, cf_curve_free>>;
using Report = std::unique_ptr<cf_report, Deleter<cf_report, cf_report_free>>;

std::string take(char* s) {
  std::string out(s);
  cf_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Group load_group(const std::string& path) {
  cf_group* g = nullptr;
  check(cf_group_from_json(read_text(path).c_str(), &g));
  return Group(g);
}

Poly load_poly(const std::string& path, int m, int k) {
  cf_poly* p = nullptr;
  check(cf_poly_from_json(read_text(path).c_str(), m, k, &p));
  return Poly(p);
}

Problem load_problem(const std::string& path) {
  cf_problem* p = nullptr;
  check(cf_problem_from_file(path.c_str(), &p));
  return Problem(p);
}

cf_group_info info_of(const cf_group* g) {
  cf_group_info i{};
  check(cf_group_info_get(g, &i));
  return i;
}

struct Common {
  std::string group, poly, out, center, problem, monneau_p, rule_cache, poly2;
  double rmin = 0.25, rmax = 2.0, r = 1.0;
  int steps = 32, resolution = 32, kappa_degree = 1;
  std::optional<double> kappa;
  std::uint64_t mc_samples = 200000, seed = 1;
  bool json = false;
  std::string fault;
};

cf_curve_options curve_options(const Common& c, const cf_poly* monneau_p) {
  cf_curve_options o{};
  o.rmin = c.rmin;
  o.rmax = c.rmax;
  o.steps = c.steps;
  o.has_kappa = c.kappa.has_value();
  o.kappa = c.kappa.value_or(0.0);
  o.monneau_p = monneau_p;
  o.center = c.center.empty() ? nullptr : c.center.c_str();
  return o;
}

const char* cache_dir(const Common& c) { return c.rule_cache.empty() ? nullptr : c.rule_cache.c_str(); }

void warn_zero_height(const cf_curve* curve) {
  if (int n = cf_curve_zero_height(curve))
    std::cerr << "warning: H(r) vanished at " << n << " of " << cf_curve_size(curve)
              << " radii (function is zero on the ball); N reported as nan\n";
}

int cmd_group(const Common& c) {
  Group g = load_group(c.group);
  cf_group_info i = info_of(g.get());
  std::ostringstream os;
  if (c.json) {
    os << "{\"m\":" << i.m << ",\"k\":" << i.k << ",\"N\":" << i.N << ",\"Q\":" << i.Q
       << ",\"htype\":" << (i.is_htype ? "true" : "false") << ",\"metivier\":" << (i.is_metivier ? "true" : "false")
       << ",\"metivier_exact\":" << (i.metivier_exact ? "true" : "false")
       << ",\"min_singular_value\":" << fmt(i.min_singular_value) << "}\n";
  } else {
    os << "m=" << i.m << " k=" << i.k << " N=" << i.N << " Q=" << i.Q << " htype=" << (i.is_htype ? "true" : "false")
       << " metivier=" << (i.is_metivier ? "true" : "false");
    if (!i.metivier_exact)
      os << " (sampled " << i.samples << " directions, min sv " << fmt(i.min_singular_value) << ")";
    os << "\n";
  }
  emit(os.str(), c.out);
  return 0;
}

int cmd_harmonics(const Common& c) {
  Group g = load_group(c.group);
  char* s = nullptr;
  check(cf_harmonic_basis_json(g.get(), c.kappa_degree, &s));
  emit(take(s), c.out);
  return 0;
}

int cmd_discrepancy(const Common& c) {
  Group g = load_group(c.group);
  cf_group_info i = info_of(g.get());
  Poly p = load_poly(c.poly, i.m, i.k);
  cf_poly* d = nullptr;
  check(cf_poly_apply(g.get(), CF_OP_DISCREPANCY, 0, p.get(), &d));
  Poly dp(d);
  char* s = nullptr;
  check(cf_poly_to_json(dp.get(), &s));
  emit(take(s) + "\n", c.out);
  return 0;
}

int cmd_frequency(const Common& c) {
  Group g = load_group(c.group);
  cf_group_info i = info_of(g.get());
  Poly u = load_poly(c.poly, i.m, i.k);
  Poly P;
  if (!c.monneau_p.empty()) P = load_poly(c.monneau_p, i.m, i.k);
  cf_rule* r = nullptr;
  check(cf_rule_group(g.get(), c.resolution, cache_dir(c), &r));
  Rule rule(r);
  cf_curve_options o = curve_options(c, P.get());
  cf_curve* cv = nullptr;
  check(cf_frequency_curve(g.get(), u.get(), rule.get(), &o, &cv));
  Curve curve(cv);
  warn_zero_height(curve.get());
  char* s = nullptr;
  check(cf_curve_to_csv(curve.get(), &s));
  emit(take(s), c.out);
  return 0;
}

struct BaouendiInputs {
  Problem problem;
  cf_problem_info info{};
  Poly u, P, other;
};

BaouendiInputs load_baouendi(const Common& c) {
  BaouendiInputs in;
  in.problem = load_problem(c.problem);
  check(cf_problem_info_get(in.problem.get(), &in.info));
  if (!c.poly.empty()) in.u = load_poly(c.poly, in.info.m, in.info.k);
  if (!c.monneau_p.empty()) in.P = load_poly(c.monneau_p, in.info.m, in.info.k);
  if (!c.poly2.empty()) in.other = load_poly(c.poly2, in.info.m, in.info.k);
  return in;
}

Rule baouendi_rule(const Common& c, const cf_problem* p) {
  cf_rule* r = nullptr;
  check(cf_problem_rule(p, c.resolution, cache_dir(c), &r));
  return Rule(r);
}

// Solves the problem unless a polynomial field replaces the grid solution.
Grid solve_if_needed(const BaouendiInputs& in) {
  if (in.u) return Grid();
  cf_grid* g = nullptr;
  check(cf_baouendi_solve(in.problem.get(), &g));
  return Grid(g);
}

int cmd_baouendi_solve(const Common& c) {
  BaouendiInputs in = load_baouendi(c);
  cf_grid* g = nullptr;
  check(cf_baouendi_solve(in.problem.get(), &g));
  Grid grid(g);
  cf_grid_info gi{};
  check(cf_grid_info_get(grid.get(), &gi));
  std::cerr << "nodes=" << gi.nodes << " iterations=" << gi.iterations << " solver_residual=" << fmt(gi.solver_residual)
            << " discrete_residual=" << fmt(gi.discrete_residual) << "\n";
  char* s = nullptr;
  check(cf_grid_to_csv(grid.get(), &s));
  emit(take(s), c.out);
  return 0;
}

int cmd_baouendi_frequency(const Common& c) {
  BaouendiInputs in = load_baouendi(c);
  Grid grid = solve_if_needed(in);
  Rule rule = baouendi_rule(c, in.problem.get());
  cf_curve_options o = curve_options(c, in.P.get());
  cf_curve* cv = nullptr;
  check(cf_baouendi_curve(in.problem.get(), grid.get(), in.u.get(), rule.get(), &o, &cv));
  Curve curve(cv);
  warn_zero_height(curve.get());
  char* s = nullptr;
  check(cf_curve_to_csv(curve.get(), &s));
  emit(take(s), c.out);
  return 0;
}

int cmd_baouendi_ortho(const Common& c) {
  BaouendiInputs in = load_baouendi(c);
  if (!in.u || !in.other) throw InputError("ortho needs --poly and --poly2");
  Rule rule = baouendi_rule(c, in.problem.get());
  double inner = 0, na = 0, nb = 0;
  check(cf_baouendi_ortho(in.problem.get(), in.u.get(), in.other.get(), c.r, rule.get(), &inner, &na, &nb));
  const double rel = na * nb > 0 ? inner / (na * nb) : 0.0;
  emit("r=" + fmt(c.r) + " inner=" + fmt(inner) + " norm_a=" + fmt(na) + " norm_b=" + fmt(nb) +
           " relative=" + fmt(rel) + "\n",
       c.out);
  return 0;
}

int cmd_baouendi_identity(const Common& c, bool monneau) {
  BaouendiInputs in = load_baouendi(c);
  Grid grid = solve_if_needed(in);
  Rule rule = baouendi_rule(c, in.problem.get());
  cf_curve_options o = curve_options(c, in.P.get());
  double kappa = 0;
  char* s = nullptr;
  if (monneau)
    check(cf_baouendi_monneau_csv(in.problem.get(), grid.get(), in.u.get(), rule.get(), &o, &kappa, &s));
  else
    check(cf_baouendi_weiss_csv(in.problem.get(), grid.get(), in.u.get(), rule.get(), &o, &kappa, &s));
  std::cerr << "kappa=" << fmt(kappa) << (c.kappa ? "" : " (estimated as N at rmin)") << "\n";
  emit(take(s), c.out);
  return 0;
}

int cmd_verify(const Common& c) {
  if (c.fault == "psi-sign")
    cf_set_fault(CF_FAULT_PSI_SIGN);
  else if (!c.fault.empty())
    throw InputError("unknown fault '" + c.fault + "'");
  cf_verify_options o{c.resolution, c.mc_samples, c.seed, c.steps};
  cf_report* r = nullptr;
  check(cf_verify_run(&o, &r));
  Report report(r);
  char* s = nullptr;
  check(c.json ? cf_report_to_json(report.get(), &s) : cf_report_to_text(report.get(), &s));
  emit(take(s), c.out);
  return cf_report_passed(report.get()) ? 0 : kExitVerifyFailed;
}

void add_radii(CLI::App* app, Common& c) {
  app->add_option("--rmin", c.rmin, "Smallest radius")->check(CLI::PositiveNumber);
  app->add_option("--rmax", c.rmax, "Largest radius")->check(CLI::PositiveNumber);
  app->add_option("--steps", c.steps, "Number of geometric radii")->check(CLI::PositiveNumber);
}

void add_rule(CLI::App* app, Common& c) {
  app->add_option("--resolution", c.resolution, "Sphere rule resolution");
  app->add_option("--rule-cache", c.rule_cache, "Directory caching sphere rules");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency functions on Carnot groups and for Baouendi operators"};
  app.require_subcommand(1);
  Common c;

  auto* group = app.add_subcommand("group", "Describe a group file");
  group->add_option("--group", c.group, "Group JSON file")->required();
  group->add_flag("--json", c.json, "Emit JSON");
  group->add_option("--out", c.out, "Output file");

  auto* harmonics = app.add_subcommand("harmonics", "Basis of solid harmonics of a given degree");
  harmonics->add_option("--group", c.group, "Group JSON file")->required();
  harmonics->add_option("--kappa", c.kappa_degree, "Homogeneous degree")->required()->check(CLI::NonNegativeNumber);
  harmonics->add_option("--out", c.out, "Output file");

  auto* frequency = app.add_subcommand("frequency", "Frequency curve of a polynomial on an H-type group");
  frequency->add_option("--group", c.group, "Group JSON file")->required();
  frequency->add_option("--poly", c.poly, "Polynomial JSON file")->required();
  frequency->add_option("--center", c.center, "Center g0 as comma separated coordinates (z then t)");
  frequency->add_option("--kappa", c.kappa, "Degree for the W and M columns");
  frequency->add_option("--monneau-p", c.monneau_p, "Polynomial P for the M column");
  frequency->add_option("--out", c.out, "Output CSV");
  add_radii(frequency, c);
  add_rule(frequency, c);

  auto* discrepancy = app.add_subcommand("discrepancy", "Discrepancy numerator of a polynomial");
  discrepancy->add_option("--group", c.group, "Group JSON file")->required();
  discrepancy->add_option("--poly", c.poly, "Polynomial JSON file")->required();
  discrepancy->add_option("--out", c.out, "Output file");

  auto* baouendi = app.add_subcommand("baouendi", "Baouendi operator problems");
  baouendi->require_subcommand(1);
  auto add_problem = [&](CLI::App* s) {
    s->add_option("--problem", c.problem, "Problem JSON file")->required();
    s->add_option("--out", c.out, "Output file");
  };
  auto* bsolve = baouendi->add_subcommand("solve", "Finite difference solve; writes the grid as CSV");
  add_problem(bsolve);
  std::vector<CLI::App*> curve_cmds;
  for (const char* name : {"frequency", "weiss", "monneau"}) {
    auto* s = baouendi->add_subcommand(name, std::string(name) + " curve for the solution or for --poly");
    add_problem(s);
    s->add_option("--poly", c.poly, "Polynomial used instead of the grid solution");
    s->add_option("--kappa", c.kappa, "Degree kappa");
    s->add_option("--monneau-p", c.monneau_p, "Polynomial P of degree kappa");
    add_radii(s, c);
    add_rule(s, c);
    curve_cmds.push_back(s);
  }
  auto* bortho = baouendi->add_subcommand("ortho", "Surface inner product of two polynomials");
  add_problem(bortho);
  bortho->add_option("--poly", c.poly, "First polynomial")->required();
  bortho->add_option("--poly2", c.poly2, "Second polynomial")->required();
  bortho->add_option("--r", c.r, "Radius")->check(CLI::PositiveNumber);
  add_rule(bortho, c);

  auto* verify = app.add_subcommand("verify", "Run the identity battery");
  verify->add_option("--resolution", c.resolution, "Sphere rule resolution");
  verify->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples");
  verify->add_option("--seed", c.seed, "Random seed");
  verify->add_option("--steps", c.steps, "Radii per monotonicity check");
  verify->add_flag("--json", c.json, "Emit JSON");
  verify->add_option("--out", c.out, "Output file");
  verify->add_option("--inject-fault", c.fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*group) return cmd_group(c);
    if (*harmonics) return cmd_harmonics(c);
    if (*frequency) return cmd_frequency(c);
    if (*discrepancy) return cmd_discrepancy(c);
    if (*verify) return cmd_verify(c);
    if (*bsolve) return cmd_baouendi_solve(c);
    if (*bortho) return cmd_baouendi_ortho(c);
    if (*curve_cmds[0]) return cmd_baouendi_frequency(c);
    if (*curve_cmds[1]) return cmd_baouendi_identity(c, false);
    if (*curve_cmds[2]) return cmd_baouendi_identity(c, true);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
