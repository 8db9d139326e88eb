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

#include "carnotfreq/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "carnotfreq/errors.hpp"

namespace cfreq {

namespace {

struct Layout {
  int d = 0;
  std::vector<std::size_t> stride;
  std::size_t total = 1;
  explicit Layout(const std::vector<int>& n) : d(static_cast<int>(n.size())), stride(n.size()) {
    for (int a = d - 1; a >= 0; --a) {
      stride[a] = total;
      total *= static_cast<std::size_t>(n[a]);
    }
  }
};

struct Stencil {
  const GridSolution& sol;
  Layout lay;
  std::vector<std::uint32_t> interior;
  std::vector<double> ct;    // t-coefficient |z|^{2 alpha}/4 per node
  std::vector<double> diag;  // per node
  std::vector<double> inv_h2;

  explicit Stencil(const GridSolution& s) : sol(s), lay(s.n) {
    const int d = lay.d, m = s.spec.m;
    for (int a = 0; a < d; ++a) inv_h2.push_back(1.0 / (s.h(a) * s.h(a)));
    ct.assign(lay.total, 0.0);
    diag.assign(lay.total, 0.0);
    std::vector<int> idx(d, 0);
    for (std::size_t p = 0; p < lay.total; ++p) {
      std::size_t rem = p;
      bool inside = true;
      double z2 = 0;
      for (int a = 0; a < d; ++a) {
        idx[a] = static_cast<int>(rem / lay.stride[a]);
        rem %= lay.stride[a];
        if (idx[a] == 0 || idx[a] == s.n[a] - 1) inside = false;
        if (a < m) {
          double x = s.node(a, idx[a]);
          z2 += x * x;
        }
      }
      ct[p] = 0.25 * std::pow(z2, s.spec.alpha);
      double dg = 0;
      for (int a = 0; a < d; ++a) dg += 2 * (a < m ? 1.0 : ct[p]) * inv_h2[a];
      diag[p] = dg;
      if (inside) interior.push_back(static_cast<std::uint32_t>(p));
    }
  }

  // out_p = (A v)_p on interior nodes, A = -(D_zz + c D_tt).
  void apply(const std::vector<double>& v, std::vector<double>& out) const {
    const int m = sol.spec.m;
    for (std::uint32_t p : interior) {
      double s = 0;
      for (int a = 0; a < lay.d; ++a) {
        const std::size_t st = lay.stride[a];
        const double w = (a < m ? 1.0 : ct[p]) * inv_h2[a];
        s += w * (2 * v[p] - v[p + st] - v[p - st]);
      }
      out[p] = s;
    }
  }
};

void lagrange4(double xi, double* L, double* dL) {
  const double n0 = xi, n1 = xi - 1, n2 = xi - 2, n3 = xi - 3;
  L[0] = -n1 * n2 * n3 / 6;
  L[1] = n0 * n2 * n3 / 2;
  L[2] = -n0 * n1 * n3 / 2;
  L[3] = n0 * n1 * n2 / 6;
  dL[0] = -(n2 * n3 + n1 * n3 + n1 * n2) / 6;
  dL[1] = (n2 * n3 + n0 * n3 + n0 * n2) / 2;
  dL[2] = -(n1 * n3 + n0 * n3 + n0 * n1) / 2;
  dL[3] = (n1 * n2 + n0 * n2 + n0 * n1) / 6;
}

// Value and Euclidean gradient of the cubic interpolant.
double interpolate(const GridSolution& sol, const double* x, double* grad) {
  const int d = sol.dims();
  Layout lay(sol.n);
  int base[3];
  double L[3][4], dL[3][4];
  for (int a = 0; a < d; ++a) {
    const double h = sol.h(a);
    const double span = sol.hi[a] - sol.lo[a];
    if (x[a] < sol.lo[a] - 1e-9 * span || x[a] > sol.hi[a] + 1e-9 * span)
      fail(ErrorCode::InvalidArgument, "point lies outside the grid box");
    const double s = (x[a] - sol.lo[a]) / h;
    int i = static_cast<int>(std::floor(s));
    base[a] = std::clamp(i - 1, 0, sol.n[a] - 4);
    lagrange4(s - base[a], L[a], dL[a]);
    for (int j = 0; j < 4; ++j) dL[a][j] /= h;
  }
  double val = 0;
  double g[3] = {0, 0, 0};
  const int combos = 1 << (2 * d);
  for (int c = 0; c < combos; ++c) {
    int j[3];
    std::size_t p = 0;
    for (int a = 0; a < d; ++a) {
      j[a] = (c >> (2 * a)) & 3;
      p += static_cast<std::size_t>(base[a] + j[a]) * lay.stride[a];
    }
    const double v = sol.values[p];
    double w = 1;
    for (int a = 0; a < d; ++a) w *= L[a][j[a]];
    val += w * v;
    if (grad)
      for (int a = 0; a < d; ++a) {
        double wa = dL[a][j[a]];
        for (int b = 0; b < d; ++b)
          if (b != a) wa *= L[b][j[b]];
        g[a] += wa * v;
      }
  }
  if (grad)
    for (int a = 0; a < d; ++a) grad[a] = g[a];
  return val;
}

}  // namespace

GridSolution fd_solve(const BaouendiSpec& spec, const Box& box, const std::vector<int>& grid, const ScalarFn& boundary,
                      double tol, int max_iterations) {
  const int d = spec.m + spec.k;
  if (d < 2 || d > 3) fail(ErrorCode::BadGrid, "the solver handles m + k in {2, 3}");
  if (static_cast<int>(box.size()) != d || static_cast<int>(grid.size()) != d)
    fail(ErrorCode::BadGrid, "box and grid need one entry per coordinate");
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  GridSolution sol;
  sol.spec = spec;
  for (int a = 0; a < d; ++a) {
    if (!(box[a].second > box[a].first)) fail(ErrorCode::BadGrid, "empty box side");
    if (grid[a] < kMinGridPoints || grid[a] > kMaxGridPoints)
      fail(ErrorCode::BadGrid, "grid sizes must lie in [5, 257]");
    sol.lo.push_back(box[a].first);
    sol.hi.push_back(box[a].second);
    sol.n.push_back(grid[a]);
  }
  Stencil st(sol);
  const std::size_t total = st.lay.total;
  std::vector<double>& u = sol.values;
  u.assign(total, 0.0);
  std::vector<bool> is_interior(total, false);
  for (auto p : st.interior) is_interior[p] = true;
  std::vector<double> z(spec.m), t(spec.k);
  for (std::size_t p = 0; p < total; ++p) {
    if (is_interior[p]) continue;
    std::size_t rem = p;
    for (int a = 0; a < d; ++a) {
      int i = static_cast<int>(rem / st.lay.stride[a]);
      rem %= st.lay.stride[a];
      double x = sol.node(a, i);
      if (a < spec.m)
        z[a] = x;
      else
        t[a - spec.m] = x;
    }
    u[p] = boundary(z, t);
  }
  std::vector<double> r(total, 0.0), zr(total, 0.0), pv(total, 0.0), Ap(total, 0.0);
  st.apply(u, Ap);
  double rz = 0, r0 = 0;
  for (auto p : st.interior) {
    r[p] = -Ap[p];
    zr[p] = r[p] / st.diag[p];
    pv[p] = zr[p];
    rz += r[p] * zr[p];
    r0 += r[p] * r[p];
  }
  r0 = std::sqrt(r0);
  if (max_iterations <= 0) max_iterations = 200000;
  int it = 0;
  double rn = r0;
  while (rn > tol * r0 && r0 > 0) {
    if (it >= max_iterations)
      fail(ErrorCode::NoConvergence, "conjugate gradients stalled at relative residual " + std::to_string(rn / r0));
    st.apply(pv, Ap);
    double pAp = 0;
    for (auto p : st.interior) pAp += pv[p] * Ap[p];
    const double alpha = rz / pAp;
    double rz_new = 0, rr = 0;
    for (auto p : st.interior) {
      u[p] += alpha * pv[p];
      r[p] -= alpha * Ap[p];
      zr[p] = r[p] / st.diag[p];
      rz_new += r[p] * zr[p];
      rr += r[p] * r[p];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (auto p : st.interior) pv[p] = zr[p] + beta * pv[p];
    rn = std::sqrt(rr);
    ++it;
  }
  sol.iterations = it;
  sol.residual = r0 > 0 ? rn / r0 : 0.0;
  return sol;
}

double discrete_residual(const GridSolution& sol) {
  Stencil st(sol);
  std::vector<double> Au(st.lay.total, 0.0);
  st.apply(sol.values, Au);
  double worst = 0, dmax = 0, umax = 0;
  for (auto p : st.interior) {
    worst = std::max(worst, std::abs(Au[p]));
    dmax = std::max(dmax, st.diag[p]);
  }
  for (double v : sol.values) umax = std::max(umax, std::abs(v));
  const double scale = dmax * umax;
  return scale > 0 ? worst / scale : worst;
}

double grid_interpolate(const GridSolution& sol, std::span<const double> z, std::span<const double> t) {
  double x[3];
  for (int i = 0; i < sol.spec.m; ++i) x[i] = z[i];
  for (int l = 0; l < sol.spec.k; ++l) x[sol.spec.m + l] = t[l];
  return interpolate(sol, x, nullptr);
}

FieldPtr grid_field(const GridSolution& sol) {
  auto shared = std::make_shared<const GridSolution>(sol);
  const int m = sol.spec.m, k = sol.spec.k;
  ScalarFn value = [shared](std::span<const double> z, std::span<const double> t) {
    return grid_interpolate(*shared, z, t);
  };
  GradFn grad = [shared, m, k](std::span<const double> z, std::span<const double> t, std::span<double> gz,
                               std::span<double> gt) {
    double x[3], g[3];
    for (int i = 0; i < m; ++i) x[i] = z[i];
    for (int l = 0; l < k; ++l) x[m + l] = t[l];
    interpolate(*shared, x, g);
    for (int i = 0; i < m; ++i) gz[i] = g[i];
    for (int l = 0; l < k; ++l) gt[l] = g[m + l];
  };
  return baouendi_fn_field(sol.spec, value, grad);
}

}  // namespace cfreq
