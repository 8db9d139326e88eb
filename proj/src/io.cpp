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

#include "carnotfreq/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "carnotfreq/errors.hpp"
#include "json.hpp"

namespace cfreq {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  fail(ErrorCode::ParseError, "expected a number or rational string");
}

int positive_int(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer())
    fail(ErrorCode::ParseError, std::string("missing integer field '") + key + "'");
  int v = obj[key].get<int>();
  if (v < 1) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be positive");
  return v;
}

ordered_json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

std::string context_json(const GaugeGeometry& geo) {
  ordered_json j;
  if (geo.group) {
    j["group"] = json::parse(group_to_json(*geo.group));
  } else {
    j["baouendi"] = {{"m", geo.m}, {"k", geo.k}, {"alpha", geo.alpha}};
  }
  return j.dump();
}

}  // namespace

GroupSpec group_from_json(const std::string& text) {
  json j = parse(text);
  int m = positive_int(j, "m");
  int k = positive_int(j, "k");
  if (!j.contains("J") || !j["J"].is_array()) fail(ErrorCode::ParseError, "missing array field 'J'");
  std::vector<RMatrix> J;
  for (const auto& M : j["J"]) {
    if (!M.is_array()) fail(ErrorCode::ParseError, "each J entry must be a matrix");
    RMatrix rm;
    for (const auto& row : M) {
      if (!row.is_array()) fail(ErrorCode::ParseError, "matrix rows must be arrays");
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(rational_of(v));
      rm.push_back(std::move(r));
    }
    J.push_back(std::move(rm));
  }
  return GroupSpec::make(m, k, std::move(J));
}

std::string group_to_json(const GroupSpec& G) {
  ordered_json j;
  j["m"] = G.m();
  j["k"] = G.k();
  ordered_json Js = ordered_json::array();
  for (const auto& M : G.J()) {
    ordered_json mj = ordered_json::array();
    for (const auto& row : M) {
      ordered_json rj = ordered_json::array();
      for (const auto& q : row) rj.push_back(rational_json(q));
      mj.push_back(rj);
    }
    Js.push_back(mj);
  }
  j["J"] = Js;
  return j.dump();
}

Polynomial poly_from_json(const std::string& text, int m, int k) {
  json j = parse(text);
  if (!j.is_array()) fail(ErrorCode::ParseError, "a polynomial is a list of terms");
  Polynomial p(m, k);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("coeff")) fail(ErrorCode::ParseError, "term needs 'coeff'");
    Exponents e(m + k, 0);
    auto read = [&](const char* key, int len, int offset) {
      if (!term.contains(key)) {
        if (len == 0) return;
        fail(ErrorCode::ParseError, std::string("term needs '") + key + "'");
      }
      const auto& a = term[key];
      if (!a.is_array() || static_cast<int>(a.size()) != len)
        fail(ErrorCode::ParseError, std::string("'") + key + "' has the wrong length");
      for (int i = 0; i < len; ++i) {
        if (!a[i].is_number_integer() || a[i].get<int>() < 0)
          fail(ErrorCode::ParseError, "exponents must be nonnegative integers");
        e[offset + i] = a[i].get<int>();
      }
    };
    read("z", m, 0);
    read("t", k, m);
    p.add_term(e, rational_of(term["coeff"]));
  }
  return p;
}

std::string poly_to_json(const Polynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    ordered_json t;
    t["coeff"] = to_string(c);
    t["z"] = std::vector<int>(e.begin(), e.begin() + p.m());
    t["t"] = std::vector<int>(e.begin() + p.m(), e.end());
    arr.push_back(t);
  }
  return arr.dump();
}

BaouendiProblem problem_from_json(const std::string& text, const std::string& base_dir) {
  json j = parse(text);
  BaouendiProblem pr;
  int m = positive_int(j, "m");
  int k = positive_int(j, "k");
  if (!j.contains("alpha") || !j["alpha"].is_number()) fail(ErrorCode::ParseError, "missing number 'alpha'");
  pr.spec = BaouendiSpec::make(m, k, j["alpha"].get<double>());
  if (!j.contains("box") || !j["box"].is_array()) fail(ErrorCode::ParseError, "missing 'box'");
  for (const auto& side : j["box"]) {
    if (!side.is_array() || side.size() != 2 || !side[0].is_number() || !side[1].is_number())
      fail(ErrorCode::ParseError, "box sides are [lo, hi] pairs");
    pr.box.emplace_back(side[0].get<double>(), side[1].get<double>());
  }
  if (!j.contains("grid") || !j["grid"].is_array()) fail(ErrorCode::ParseError, "missing 'grid'");
  for (const auto& g : j["grid"]) {
    if (!g.is_number_integer()) fail(ErrorCode::ParseError, "grid sizes are integers");
    pr.grid.push_back(g.get<int>());
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) fail(ErrorCode::ParseError, "'tol' must be a number");
    pr.tol = j["tol"].get<double>();
  }
  if (!j.contains("boundary") || !j["boundary"].is_string()) fail(ErrorCode::ParseError, "missing 'boundary'");
  pr.boundary_desc = j["boundary"].get<std::string>();
  const std::string prefix = "poly:";
  if (pr.boundary_desc.rfind(prefix, 0) != 0) fail(ErrorCode::ParseError, "boundary must be 'poly:<file>'");
  std::filesystem::path path = pr.boundary_desc.substr(prefix.size());
  if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
  pr.boundary = poly_from_json(read_file(path.string()), m, k);
  return pr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_to_csv(const FrequencyCurve& c) {
  std::ostringstream os;
  os << "r,D,H,N,W_kappa,M_kappa,discrepancy_norm\n";
  for (std::size_t i = 0; i < c.r.size(); ++i)
    os << format_double(c.r[i]) << ',' << format_double(c.D[i]) << ',' << format_double(c.H[i]) << ','
       << format_double(c.N[i]) << ',' << format_double(c.W[i]) << ',' << format_double(c.M[i]) << ','
       << format_double(c.disc[i]) << '\n';
  return os.str();
}

std::string grid_to_csv(const GridSolution& sol) {
  std::ostringstream os;
  const int m = sol.spec.m, k = sol.spec.k, d = sol.dims();
  for (int i = 0; i < m; ++i) os << "z" << i + 1 << ',';
  for (int l = 0; l < k; ++l) os << "t" << l + 1 << ',';
  os << "u\n";
  std::vector<int> idx(d, 0);
  for (std::size_t p = 0; p < sol.values.size(); ++p) {
    for (int a = 0; a < d; ++a) os << format_double(sol.node(a, idx[a])) << ',';
    os << format_double(sol.values[p]) << '\n';
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < sol.n[a]) break;
      idx[a] = 0;
    }
  }
  return os.str();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string rule_cache_key(const GaugeGeometry& geo, int resolution) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(context_json(geo))));
  return std::string(buf) + "-r" + std::to_string(resolution);
}

std::string rule_to_json(const SphereRule& rule) {
  ordered_json j;
  j["context"] = json::parse(context_json(rule.geo));
  j["resolution"] = rule.resolution;
  j["z"] = rule.z;
  j["t"] = rule.t;
  j["w"] = rule.w;
  j["psi"] = rule.psi;
  return j.dump();
}

SphereRule rule_from_json(const std::string& text, const GaugeGeometry& geo) {
  json j = parse(text);
  if (!j.contains("context") || j["context"].dump() != json::parse(context_json(geo)).dump())
    fail(ErrorCode::ParseError, "cached rule belongs to a different context");
  SphereRule rule;
  rule.geo = geo;
  try {
    rule.resolution = j.at("resolution").get<int>();
    rule.z = j.at("z").get<std::vector<double>>();
    rule.t = j.at("t").get<std::vector<double>>();
    rule.w = j.at("w").get<std::vector<double>>();
    rule.psi = j.at("psi").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  const std::size_t n = rule.w.size();
  if (rule.psi.size() != n || rule.z.size() != n * geo.m || rule.t.size() != n * geo.k)
    fail(ErrorCode::ParseError, "cached rule arrays disagree in length");
  return rule;
}

namespace {

template <class Spec>
SphereRule cached(const Spec& spec, const GaugeGeometry& geo, int resolution, const std::string& dir) {
  if (dir.empty()) return build_sphere_rule(spec, resolution);
  std::filesystem::path path = std::filesystem::path(dir) / (rule_cache_key(geo, resolution) + ".json");
  if (std::filesystem::exists(path)) {
    SphereRule r = rule_from_json(read_file(path.string()), geo);
    if (r.resolution == resolution) return r;
  }
  SphereRule r = build_sphere_rule(spec, resolution);
  std::filesystem::create_directories(dir);
  write_file(path.string(), rule_to_json(r));
  return r;
}

}  // namespace

SphereRule cached_sphere_rule(const GroupSpec& G, int resolution, const std::string& dir) {
  return cached(G, geometry_of(G), resolution, dir);
}

SphereRule cached_sphere_rule(const BaouendiSpec& spec, int resolution, const std::string& dir) {
  return cached(spec, geometry_of(spec), resolution, dir);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

}  // namespace cfreq
