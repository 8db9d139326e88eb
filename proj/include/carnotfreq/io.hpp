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

#include <cstdint>
#include <string>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/fd_solver.hpp"
#include "carnotfreq/frequency.hpp"
#include "carnotfreq/group.hpp"
#include "carnotfreq/polynomial.hpp"
#include "carnotfreq/quadrature.hpp"

namespace cfreq {

// {"m":2,"k":1,"J":[[[0,-1],[1,0]]]}; entries are numbers or "p/q" strings.
GroupSpec group_from_json(const std::string& text);
// Canonical form: integers as numbers, other rationals as "p/q" strings.
std::string group_to_json(const GroupSpec& G);

// [{"coeff":"3/4","z":[2,0],"t":[1]}, ...] in canonical term order.
Polynomial poly_from_json(const std::string& text, int m, int k);
std::string poly_to_json(const Polynomial& p);

// Baouendi problem file:
// {"m":1,"k":1,"alpha":2,"box":[[-1,1],[-1,1]],"grid":[129,129],
//  "boundary":"poly:<polynomial-file>"}
struct BaouendiProblem {
  BaouendiSpec spec;
  Box box;
  std::vector<int> grid;
  Polynomial boundary;
  std::string boundary_desc;
  double tol = 1e-11;
};
// Relative polynomial paths are resolved against base_dir.
BaouendiProblem problem_from_json(const std::string& text, const std::string& base_dir);

// r,D,H,N,W_kappa,M_kappa,discrepancy_norm with 17 significant digits.
std::string curve_to_csv(const FrequencyCurve& c);
// One row per node: z_1..z_m,t_1..t_k,u.
std::string grid_to_csv(const GridSolution& sol);
std::string format_double(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string rule_cache_key(const GaugeGeometry& geo, int resolution);
std::string rule_to_json(const SphereRule& rule);
SphereRule rule_from_json(const std::string& text, const GaugeGeometry& geo);
// Loads the rule from dir/<key>.json when present, otherwise builds and
// stores it. An empty dir disables caching.
SphereRule cached_sphere_rule(const GroupSpec& G, int resolution, const std::string& dir);
SphereRule cached_sphere_rule(const BaouendiSpec& spec, int resolution, const std::string& dir);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cfreq
