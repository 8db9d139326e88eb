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

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "carnotfreq/fixtures.hpp"
#include "carnotfreq/io.hpp"
#include "support.hpp"

using namespace cfreq;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(CF_FIXTURES) + "/" + name); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(GroupJson, RoundTrip) {
  for (const GroupSpec& G : {GroupSpec::heisenberg(1), GroupSpec::heisenberg(2), fixtures::htype_4_2(),
                             fixtures::metivier_4_1()}) {
    const std::string text = group_to_json(G);
    GroupSpec back = group_from_json(text);
    EXPECT_EQ(back.m(), G.m());
    EXPECT_EQ(back.k(), G.k());
    EXPECT_EQ(back.J(), G.J());
    EXPECT_EQ(group_to_json(back), text);
  }
  EXPECT_EQ(group_to_json(group_from_json(fixture("h1.json"))), group_to_json(GroupSpec::heisenberg(1)));
}

TEST(GroupJson, RationalEntries) {
  GroupSpec G = group_from_json(R"({"m":2,"k":1,"J":[[[0,"-3/6"],["1/2",0]]]})");
  EXPECT_EQ(G.J()[0][0][1], Rational(-1, 2));
  EXPECT_NE(group_to_json(G).find("\"-1/2\""), std::string::npos);
  EXPECT_FALSE(G.is_htype());
}

TEST(GroupJson, Errors) {
  EXPECT_CF_ERROR(group_from_json(fixture("malformed.json")), ErrorCode::ParseError);
  EXPECT_CF_ERROR(group_from_json(fixture("not_skew.json")), ErrorCode::NonSkewSymmetric);
  EXPECT_CF_ERROR(group_from_json(R"({"k":1,"J":[[[0]]]})"), ErrorCode::ParseError);
  EXPECT_CF_ERROR(group_from_json(R"({"m":0,"k":1,"J":[]})"), ErrorCode::ParseError);
  EXPECT_CF_ERROR(group_from_json(R"({"m":2,"k":1,"J":[[[0,"x"],[1,0]]]})"), ErrorCode::ParseError);
  EXPECT_CF_ERROR(group_from_json(R"({"m":2,"k":1,"J":[[[0,-1]]]})"), ErrorCode::DimensionMismatch);
  EXPECT_CF_ERROR(group_from_json(R"({"m":2,"k":2,"J":[[[0,-1],[1,0]]]})"), ErrorCode::DimensionMismatch);
  EXPECT_CF_ERROR(read_file("/nonexistent/file.json"), ErrorCode::ParseError);
}

TEST(PolyJson, RoundTripOnRandomPolynomials) {
  gen::Stream s(4);
  for (int n = 0; n < 50; ++n) {
    const int m = s.integer(1, 4), k = s.integer(1, 2);
    Polynomial p = s.polynomial(m, k);
    const std::string text = poly_to_json(p);
    Polynomial back = poly_from_json(text, m, k);
    EXPECT_EQ(back, p);
    EXPECT_EQ(poly_to_json(back), text);
  }
  EXPECT_EQ(poly_to_json(Polynomial(2, 1)), "[]");
  EXPECT_EQ(poly_from_json(fixture("x.json"), 2, 1), fixtures::h1_x());
  EXPECT_TRUE(poly_from_json(fixture("zero.json"), 2, 1).is_zero());
}

TEST(PolyJson, MergesAndCanonicalizes) {
  Polynomial p = poly_from_json(R"([{"coeff":"2/4","z":[1,0],"t":[0]},{"coeff":0.5,"z":[1,0],"t":[0]},
                                    {"coeff":3,"z":[0,0],"t":[1]},{"coeff":"-3","z":[0,0],"t":[1]}])",
                                2, 1);
  EXPECT_EQ(p, fixtures::h1_x());
}

TEST(PolyJson, Errors) {
  EXPECT_CF_ERROR(poly_from_json(R"({"coeff":1})", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json(R"([{"z":[1,0],"t":[0]}])", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json(R"([{"coeff":1,"z":[1],"t":[0]}])", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json(R"([{"coeff":1,"z":[1,-1],"t":[0]}])", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json(R"([{"coeff":1,"z":[1,0]}])", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json(R"([{"coeff":"1/0","z":[1,0],"t":[0]}])", 2, 1), ErrorCode::ParseError);
  EXPECT_CF_ERROR(poly_from_json("[", 2, 1), ErrorCode::ParseError);
}

TEST(ProblemJson, ParsesFixtureAndResolvesPaths) {
  BaouendiProblem pr = problem_from_json(fixture("mixed_problem.json"), CF_FIXTURES);
  EXPECT_EQ(pr.spec.m, 1);
  EXPECT_EQ(pr.spec.k, 1);
  EXPECT_EQ(pr.spec.alpha, 2.0);
  EXPECT_EQ(pr.box, (Box{{-1, 1}, {-0.2, 0.2}}));
  EXPECT_EQ(pr.grid, (std::vector<int>{129, 129}));
  EXPECT_EQ(pr.tol, 1e-12);
  EXPECT_EQ(pr.boundary, fixtures::baouendi_mixed(9).boundary);
  EXPECT_EQ(pr.boundary_desc, "poly:mixed_boundary.json");
}

TEST(ProblemJson, Errors) {
  const std::string base = R"("m":1,"k":1,"box":[[-1,1],[-1,1]],"grid":[9,9])";
  EXPECT_CF_ERROR(problem_from_json("{" + base + R"(,"boundary":"poly:x.json"})", CF_FIXTURES), ErrorCode::ParseError);
  EXPECT_CF_ERROR(problem_from_json("{" + base + R"(,"alpha":1,"boundary":"x.json"})", CF_FIXTURES),
                  ErrorCode::ParseError);
  EXPECT_CF_ERROR(problem_from_json("{" + base + R"(,"alpha":1,"boundary":"poly:missing.json"})", CF_FIXTURES),
                  ErrorCode::ParseError);
  EXPECT_CF_ERROR(problem_from_json("{" + base + R"(,"alpha":1,"tol":"small","boundary":"poly:z1.json"})", CF_FIXTURES),
                  ErrorCode::ParseError);
  EXPECT_CF_ERROR(problem_from_json(R"({"m":1,"k":1,"alpha":1,"box":[[-1]],"grid":[9,9],"boundary":"poly:z1.json"})",
                                    CF_FIXTURES),
                  ErrorCode::ParseError);
  BaouendiProblem ok = problem_from_json("{" + base + R"(,"alpha":1,"boundary":"poly:z1.json"})", CF_FIXTURES);
  EXPECT_EQ(ok.tol, 1e-11);
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  gen::Stream s(6);
  for (int n = 0; n < 100; ++n) {
    double v = s.uniform(-1e6, 1e6) * std::pow(10.0, s.integer(-20, 20));
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Csv, CurveAndGridLayout) {
  FrequencyCurve c;
  c.r = {1, 2};
  c.D = {0.5, 1.5};
  c.H = {1, 1};
  c.N = {0.5, std::nan("")};
  c.W = {0, 0};
  c.M = {std::nan(""), std::nan("")};
  c.disc = {0, 0.25};
  auto l = lines(curve_to_csv(c));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "r,D,H,N,W_kappa,M_kappa,discrepancy_norm");
  EXPECT_EQ(l[1], "1,0.5,1,0.5,0,nan,0");
  EXPECT_EQ(l[2], "2,1.5,1,nan,0,nan,0.25");

  auto f = fixtures::baouendi_mixed(5);
  auto g = lines(grid_to_csv(f.solution));
  ASSERT_EQ(g.size(), 26u);
  EXPECT_EQ(g[0], "z1,t1,u");
  EXPECT_EQ(g[1].substr(0, g[1].rfind(',')), "-1,-0.20000000000000001");
  EXPECT_EQ(g[2].substr(0, g[2].rfind(',')), "-1,-0.10000000000000001");
  EXPECT_EQ(g[25].substr(0, g[25].rfind(',')), "1,0.20000000000000001");
}

TEST(RuleCache, RoundTripAndContextCheck) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("carnotfreq_rule_cache_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  GroupSpec G = GroupSpec::heisenberg(1);
  SphereRule built = build_sphere_rule(G, 8);
  SphereRule first = cached_sphere_rule(G, 8, dir.string());
  ASSERT_TRUE(fs::exists(dir / (rule_cache_key(first.geo, 8) + ".json")));
  SphereRule second = cached_sphere_rule(G, 8, dir.string());
  EXPECT_EQ(second.w, built.w);
  EXPECT_EQ(second.z, built.z);
  EXPECT_EQ(second.t, built.t);
  EXPECT_EQ(second.psi, built.psi);
  EXPECT_NE(rule_cache_key(first.geo, 8), rule_cache_key(first.geo, 9));
  BaouendiSpec spec = BaouendiSpec::make(2, 1, 1.0);
  EXPECT_NE(rule_cache_key(geometry_of(spec), 8), rule_cache_key(first.geo, 8));
  EXPECT_CF_ERROR(rule_from_json(rule_to_json(built), geometry_of(spec)), ErrorCode::ParseError);
  EXPECT_CF_ERROR(rule_from_json(R"({"context":1})", first.geo), ErrorCode::ParseError);
  EXPECT_EQ(cached_sphere_rule(G, 8, "").w, built.w);
  fs::remove_all(dir);
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
