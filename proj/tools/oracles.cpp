#include "oracles.h"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace oracle {

double green_series(fch::Vec2 xi, fch::Vec2 eta) {
  double x = xi[0], y = xi[1], xp = eta[0], yp = eta[1];
  double lo = std::min(x, xp), hi = std::max(x, xp);
  if (hi - lo <= 0) throw std::invalid_argument("green_series: needs x != x'");
  // l = 0: g'' = delta - 1, Neumann, zero mean
  double g = hi - 0.5 * (x * x + xp * xp) - 1.0 / 3.0;
  for (int l = 1; l < 100000; ++l) {
    double q = l * M_PI;
    // -cosh(q lo) cosh(q (1 - hi)) / (q sinh q), rewritten with decaying exponentials
    double e = std::exp(-q * (hi - lo));
    double term = -e * (1 + std::exp(-2 * q * lo)) * (1 + std::exp(-2 * q * (1 - hi))) /
                  (2 * q * (1 - std::exp(-2 * q)));
    term *= 2 * std::cos(q * y) * std::cos(q * yp);
    g += term;
    if (e < 1e-18) break;
  }
  return g;
}

double laplacian(const std::function<double(double, double)>& f, double x, double y, double h0) {
  const int L = 4;
  double T[L][L];
  double h = h0;
  double f0 = f(x, y);
  for (int i = 0; i < L; ++i, h *= 0.5) {
    T[i][0] = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) - 4 * f0) / (h * h);
    double p = 4;
    for (int j = 1; j <= i; ++j, p *= 4) T[i][j] = (p * T[i][j - 1] - T[i - 1][j - 1]) / (p - 1);
  }
  return T[L - 1][L - 1];
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n, p0 = P_{n-1}
      dp = n * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1 - z);
    w[i] = 1.0 / ((1 - z * z) * dp * dp);
  }
}

namespace {
// antiderivative in u and v of (1/2) log(u^2 + v^2)
double F(double u, double v) {
  double r2 = u * u + v * v;
  if (r2 == 0) return 0.0;
  double s = u * v * (std::log(r2) - 3);
  if (u != 0) s += u * u * std::atan(v / u);
  if (v != 0) s += v * v * std::atan(u / v);
  return 0.5 * s;
}
}  // namespace

double log_integral_unit_square(fch::Vec2 xi) {
  double X = xi[0], Y = xi[1];
  return F(1 - X, 1 - Y) - F(-X, 1 - Y) - F(1 - X, -Y) + F(-X, -Y);
}

namespace {
double lagrange_d0(const double* nodes, const double* vals, int m) {
  // derivative at 0 of the interpolant through (nodes, vals)
  double d = 0;
  for (int j = 0; j < m; ++j) {
    double num = 0;
    for (int a = 0; a < m; ++a) {
      if (a == j) continue;
      double prod = 1;
      for (int b = 0; b < m; ++b)
        if (b != j && b != a) prod *= (0 - nodes[b]);
      num += prod;
    }
    double den = 1;
    for (int b = 0; b < m; ++b)
      if (b != j) den *= nodes[j] - nodes[b];
    d += vals[j] * num / den;
  }
  return d;
}
}  // namespace

ExteriorSolve exterior_dirichlet_fd(fch::Vec2 c, double R, int k, int n, int n_angles) {
  const double h = 1.0 / n;
  auto cx = [&](int i) { return (i + 0.5) * h; };
  std::vector<int> id(static_cast<size_t>(n) * n, -1);
  int nu = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (std::hypot(cx(i) - c[0], cx(j) - c[1]) > R) id[i + n * j] = nu++;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * static_cast<size_t>(nu));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nu);
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int r = id[i + n * j];
      if (r < 0) continue;
      double diag = 0;
      for (int q = 0; q < 4; ++q) {
        int ii = i + di[q], jj = j + dj[q];
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;  // zero flux wall
        int s = id[ii + n * jj];
        if (s >= 0) {
          diag += 1.0 / (h * h);
          trip.emplace_back(r, s, -1.0 / (h * h));
          continue;
        }
        // crossing point p + t (q - p) on the circle
        double px = cx(i) - c[0], py = cx(j) - c[1];
        double dx = (cx(ii) - cx(i)), dy = (cx(jj) - cx(j));
        double A = dx * dx + dy * dy, B = 2 * (px * dx + py * dy), C = px * px + py * py - R * R;
        double t = (-B - std::sqrt(B * B - 4 * A * C)) / (2 * A);
        t = std::max(t, 1e-8);
        double ang = std::atan2(py + t * dy, px + t * dx);
        double a = 1.0 / (t * h * h);
        diag += a;
        b[r] += a * std::cos(k * ang);
      }
      trip.emplace_back(r, r, diag);
    }
  Eigen::SparseMatrix<double> M(nu, nu);
  M.setFromTriplets(trip.begin(), trip.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(20000);
  cg.compute(M);
  Eigen::VectorXd u = cg.solve(b);
  if (cg.info() != Eigen::Success) throw std::runtime_error("exterior_dirichlet_fd: CG failed");

  auto val = [&](int i, int j) {
    i = i < 0 ? -1 - i : (i >= n ? 2 * n - 1 - i : i);
    j = j < 0 ? -1 - j : (j >= n ? 2 * n - 1 - j : j);
    int r = id[i + n * j];
    if (r < 0) throw std::logic_error("exterior_dirichlet_fd: stencil entered the disk");
    return u[r];
  };
  auto interp = [&](double x, double y) {
    double tx = x / h - 0.5, ty = y / h - 0.5;
    int i0 = static_cast<int>(std::floor(tx)), j0 = static_cast<int>(std::floor(ty));
    double fx = tx - i0, fy = ty - j0, wx[4], wy[4];
    const double nodes[4] = {-1, 0, 1, 2};
    for (int a = 0; a < 4; ++a) {
      wx[a] = wy[a] = 1;
      for (int bb = 0; bb < 4; ++bb)
        if (bb != a) {
          wx[a] *= (fx - nodes[bb]) / (nodes[a] - nodes[bb]);
          wy[a] *= (fy - nodes[bb]) / (nodes[a] - nodes[bb]);
        }
    }
    double s = 0;
    for (int bb = 0; bb < 4; ++bb)
      for (int a = 0; a < 4; ++a) s += wx[a] * wy[bb] * val(i0 - 1 + a, j0 - 1 + bb);
    return s;
  };

  ExteriorSolve out;
  for (int q = 0; q < n_angles; ++q) {
    double th = 2 * M_PI * q / n_angles;
    double nodes[4] = {0, 3 * h, 4 * h, 5 * h}, vals[4];
    vals[0] = std::cos(k * th);
    for (int m = 1; m < 4; ++m)
      vals[m] = interp(c[0] + (R + nodes[m]) * std::cos(th), c[1] + (R + nodes[m]) * std::sin(th));
    out.theta.push_back(th);
    out.dudr.push_back(lagrange_d0(nodes, vals, 4));
  }
  return out;
}

}  // namespace oracle
