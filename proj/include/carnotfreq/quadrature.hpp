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
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "carnotfreq/baouendi_spec.hpp"
#include "carnotfreq/group.hpp"

namespace cfreq {

using ScalarFn = std::function<double(std::span<const double> z, std::span<const double> t)>;

// Gauge geometry shared by H-type groups and Baouendi operators:
//   rho^{2a} = |z|^{2a} + 4a^2 |t|^2,  psi = |z|^{2 alpha} / rho^{2 alpha},
//   delta_r(z, t) = (r z, r^a t),  a = alpha + 1.
// An H-type group is the case alpha = 1, where rho is the Koranyi gauge.
struct GaugeGeometry {
  int m = 1;
  int k = 1;
  double alpha = 1.0;
  std::shared_ptr<const GroupSpec> group;  // set for group geometries

  double a() const { return alpha + 1.0; }
  double Q() const { return m + a() * k; }
  double rho(std::span<const double> z, std::span<const double> t) const;
  double psi(std::span<const double> z, std::span<const double> t) const;
};

GaugeGeometry geometry_of(const GroupSpec& G);
GaugeGeometry geometry_of(const BaouendiSpec& spec);

// Nodes and weights on the unit gauge sphere for the polar measure dmu with
// dg = r^{Q-1} dr dmu.
struct SphereRule {
  GaugeGeometry geo;
  int resolution = 0;
  std::vector<double> z;  // size() * m
  std::vector<double> t;  // size() * k
  std::vector<double> w;
  std::vector<double> psi;

  std::size_t size() const { return w.size(); }
  std::span<const double> node_z(std::size_t i) const {
    return {z.data() + i * geo.m, static_cast<std::size_t>(geo.m)};
  }
  std::span<const double> node_t(std::size_t i) const {
    return {t.data() + i * geo.k, static_cast<std::size_t>(geo.k)};
  }
};

inline constexpr int kMinResolution = 4;

SphereRule build_sphere_rule(const GroupSpec& G, int resolution);
SphereRule build_sphere_rule(const BaouendiSpec& spec, int resolution);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Nodes/weights on S^{d-1}: +-1 for d = 1, 2n equispaced angles for d = 2,
// Gauss-Gegenbauer recursion otherwise.
void unit_sphere_rule(int d, int n, std::vector<double>& pts, std::vector<double>& w);

// Writes delta_s(sigma_i) into z, t.
void dilated_node(const SphereRule& rule, std::size_t i, double s, std::span<double> z, std::span<double> t);

// Composite Gauss-Legendre radial rule on [0, r]: panels x 8 points.
inline constexpr int kRadialPointsPerPanel = 8;
inline constexpr int kDefaultRadialPanels = 4;
void radial_rule(double r, int panels, std::vector<double>& s, std::vector<double>& w);

double volume_integral(const ScalarFn& f, double r, const SphereRule& rule, int radial_panels = kDefaultRadialPanels);
// r^{Q-1} sum w_i psi_i f(delta_r sigma_i); with weighted = false the psi
// factor is dropped.
double surface_integral(const ScalarFn& f, double r, const SphereRule& rule, bool weighted = true);

struct MCEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

inline constexpr std::uint64_t kMinMCSamples = 100;

// Thin-shell Monte Carlo estimate of the surface integral: uniform samples in
// a Euclidean box around B_{r+h}, kept when r-h < rho < r+h, projected onto S_r
// by dilation, divided by the shell thickness 2h.
MCEstimate mc_thin_shell(const ScalarFn& f, double r, double h, std::uint64_t samples, std::uint64_t seed,
                         const GaugeGeometry& geo, bool weighted = true);
// Plain Monte Carlo estimate of the ball integral of f.
MCEstimate mc_volume_integral(const ScalarFn& f, double r, std::uint64_t samples, std::uint64_t seed,
                              const GaugeGeometry& geo);

// Mean value C Q (Q-2) r^{-Q} int_{B_r} u(g h) psi(h) dh over the left
// translate of B_r to g.
double mean_value(const GroupSpec& G, const ScalarFn& u, const Point& g, double r, const SphereRule& rule,
                  int radial_panels = kDefaultRadialPanels);

}  // namespace cfreq
