#include "fch/ch_solver.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <stdexcept>
#include <string>

#include "fch/profile1d.h"

namespace fch {

ScalarField2D init_from_curve(const Curve& c, double eps, int nx, int ny, double eps0) {
  if (eps0 >= c.boundary_margin()) throw GeometryError("init_from_curve: tube wider than the margin to the walls");
  if (eps0 * c.max_curvature() >= 1.0) throw GeometryError("init_from_curve: tube wider than 1/k(Gamma)");
  ScalarField2D m(nx, ny);
  auto pts = m.nodes();
  auto tc = signed_distance_many(c, pts, eps0, 1.5 * eps0);
  for (size_t k = 0; k < pts.size(); ++k) m.data[k] = glued_profile(tc[k].d / eps, eps, eps0);
  return m;
}

namespace {
CosineCoeffs on_grid(const ForcingField& f, int nx, int ny) {
  ScalarField2D s = f.sample(nx, ny);
  return dct_forward(s);
}
}  // namespace

CHSolver::CHSolver(const CHConfig& cfg) : cfg_(cfg) {
  if (cfg.eps <= 0 || cfg.dt <= 0) throw std::invalid_argument("CHSolver: eps and dt must be positive");
  const int nx = cfg.nx, ny = cfg.ny;
  lam_.resize(size_t(nx) * ny);
  denom_.resize(lam_.size());
  for (int l = 0; l < ny; ++l)
    for (int k = 0; k < nx; ++k) {
      double L = M_PI * M_PI * (double(k) * k + double(l) * l);
      lam_[k + nx * l] = L;
      denom_[k + nx * l] = 1.0 + cfg.dt * (cfg.eps * L * L + cfg.c_stab / cfg.eps * L);
    }
  g1_ = on_grid(cfg.G1, nx, ny);
  g2_ = on_grid(cfg.G2, nx, ny);
}

ScalarField2D CHSolver::step(const ScalarField2D& m) const {
  const double eps = cfg_.eps, dt = cfg_.dt, cs = cfg_.c_stab;
  ScalarField2D nl(m.nx, m.ny);
  for (size_t i = 0; i < m.data.size(); ++i) {
    double v = m.data[i];
    nl.data[i] = (v * v * v - v) / eps - cs / eps * v;
  }
  CosineCoeffs a = dct_forward(m), b = dct_forward(nl);
  for (size_t i = 0; i < a.c.size(); ++i) {
    double L = lam_[i];
    double rhs = a.c[i] - dt * L * (b.c[i] - g2_.c[i]) + dt * g1_.c[i];
    a.c[i] = rhs / denom_[i];
  }
  ScalarField2D out = dct_inverse(a);
  for (double v : out.data)
    if (!std::isfinite(v) || std::abs(v) > 1e3) throw InstabilityError("CHSolver: blow-up, reduce dt");
  return out;
}

ScalarField2D CHSolver::chemical_potential(const ScalarField2D& m) const {
  ScalarField2D lap = laplacian(m);
  ScalarField2D g2 = dct_inverse(g2_);
  ScalarField2D mu(m.nx, m.ny);
  for (size_t i = 0; i < m.data.size(); ++i) {
    double v = m.data[i];
    mu.data[i] = -cfg_.eps * lap.data[i] + (v * v * v - v) / cfg_.eps - g2.data[i];
  }
  return mu;
}

double free_energy(const ScalarField2D& m, double eps) {
  double pot = 0.0;
  for (double v : m.data) pot += (v * v - 1) * (v * v - 1);
  pot *= m.cell_area() / (4.0 * eps);
  return 0.5 * eps * gradient_sq_integral(m) + pot;
}

double mass(const ScalarField2D& m) { return m.integral(); }

double mass_balance_check(const std::vector<double>& masses, double dt, double g1_integral) {
  double worst = 0.0;
  for (size_t n = 0; n + 1 < masses.size(); ++n)
    worst = std::max(worst, std::abs((masses[n + 1] - masses[n]) / dt - g1_integral));
  return worst;
}

Curve extract_interface(const ScalarField2D& m, int markers) {
  const int nx = m.nx, ny = m.ny;
  auto pos = [&](int i, int j) { return m(i, j) >= 0.0; };
  // crossing on the edge from node a to node b
  auto cross = [&](int i0, int j0, int i1, int j1) {
    double v0 = m(i0, j0), v1 = m(i1, j1);
    double t = v0 / (v0 - v1);
    return Vec2{m.x(i0) + t * (m.x(i1) - m.x(i0)), m.y(j0) + t * (m.y(j1) - m.y(j0))};
  };
  auto hkey = [&](int i, int j) { return 2L * (i + long(nx) * j); };
  auto vkey = [&](int i, int j) { return 2L * (i + long(nx) * j) + 1; };

  std::map<long, Vec2> where;
  std::map<long, std::vector<long>> nb;
  auto link = [&](long a, long b) {
    nb[a].push_back(b);
    nb[b].push_back(a);
  };
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      // corners 0:(i,j) 1:(i+1,j) 2:(i+1,j+1) 3:(i,j+1); edges b,r,t,l
      bool s[4] = {pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)};
      long e[4] = {hkey(i, j), vkey(i + 1, j), hkey(i, j + 1), vkey(i, j)};
      bool has[4] = {s[0] != s[1], s[1] != s[2], s[3] != s[2], s[0] != s[3]};
      int cnt = has[0] + has[1] + has[2] + has[3];
      if (cnt == 0) continue;
      if (has[0]) where[e[0]] = cross(i, j, i + 1, j);
      if (has[1]) where[e[1]] = cross(i + 1, j, i + 1, j + 1);
      if (has[2]) where[e[2]] = cross(i, j + 1, i + 1, j + 1);
      if (has[3]) where[e[3]] = cross(i, j, i, j + 1);
      if (cnt == 2) {
        long a = -1, b = -1;
        for (int q = 0; q < 4; ++q)
          if (has[q]) (a < 0 ? a : b) = e[q];
        link(a, b);
      } else {
        // saddle: decide with the cell average
        double c = 0.25 * (m(i, j) + m(i + 1, j) + m(i + 1, j + 1) + m(i, j + 1));
        bool cpos = c >= 0.0;
        if (cpos == s[0]) {
          link(e[0], e[1]);
          link(e[2], e[3]);
        } else {
          link(e[0], e[3]);
          link(e[1], e[2]);
        }
      }
    }
  if (where.empty()) throw GeometryError("extract_interface: no zero contour");
  for (auto& kv : nb)
    if (kv.second.size() != 2) throw GeometryError("extract_interface: contour reaches the wall");
  // walk the loops
  std::map<long, bool> seen;
  std::vector<std::vector<Vec2>> loops;
  for (auto& kv : nb) {
    if (seen[kv.first]) continue;
    std::vector<Vec2> loop;
    long prev = -1, cur = kv.first;
    while (!seen[cur]) {
      seen[cur] = true;
      loop.push_back(where[cur]);
      const auto& n = nb[cur];
      long nxt = (n[0] != prev) ? n[0] : n[1];
      prev = cur;
      cur = nxt;
    }
    loops.push_back(std::move(loop));
  }
  if (loops.size() != 1)
    throw GeometryError("extract_interface: found " + std::to_string(loops.size()) + " contours");
  std::vector<Vec2>& L = loops[0];
  double a = 0.0;
  for (size_t k = 0; k < L.size(); ++k) {
    const Vec2 &p = L[k], &q = L[(k + 1) % L.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  if (a < 0) std::reverse(L.begin(), L.end());
  // uniform arclength resampling of the polyline before the spectral fit
  std::vector<double> s(L.size() + 1, 0.0);
  for (size_t k = 0; k < L.size(); ++k) {
    const Vec2 &p = L[k], &q = L[(k + 1) % L.size()];
    s[k + 1] = s[k] + std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  const int nfit = std::max(markers, 4 * static_cast<int>(L.size() / 4));
  std::vector<Vec2> u(nfit);
  size_t seg = 0;
  for (int q = 0; q < nfit; ++q) {
    double target = s.back() * q / nfit;
    while (s[seg + 1] < target) ++seg;
    double t = (target - s[seg]) / std::max(s[seg + 1] - s[seg], 1e-300);
    const Vec2 &p0 = L[seg], &p1 = L[(seg + 1) % L.size()];
    u[q] = {p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])};
  }
  Curve raw(std::move(u), Box{}, false);
  Curve out = raw.resampled(markers).filtered().resampled(markers);
  return out;
}

void write_diagnostics_header(std::ostream& os) { os << "t,mass,energy,interface_length\n"; }

void write_diagnostics_row(std::ostream& os, const CHDiagnostics& d) {
  os << std::setprecision(12) << d.t << ',' << d.mass << ',' << d.energy << ',' << d.length << '\n';
}

}  // namespace fch
