#include "fch/potential.h"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fch {

namespace {
const double kTwoPi = 2.0 * M_PI;

// D = 1 - 2 e^{-pi a} cos(pi b) + e^{-2 pi a}, written to keep accuracy near a, b = 0
double log_kernel_arg(double a, double b) {
  double E = std::exp(-M_PI * a);
  double om = -std::expm1(-M_PI * a);
  double sb = std::sin(0.5 * M_PI * b);
  return om * om + 4.0 * E * sb * sb;
}

// sum_n e^{-n pi a} cos(n pi b) / n
double log_series(double a, double b) { return -0.5 * std::log(log_kernel_arg(a, b)); }

const Eigen::MatrixXd& kress_weights(int N) {
  static std::mutex mtx;
  static std::map<int, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  if (N % 2) throw std::invalid_argument("LayerPotential: marker count must be even");
  int n = N / 2;
  std::vector<double> r(N);
  for (int d = 0; d < N; ++d) {
    double t = kTwoPi * d / N, s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * t) / m;
    r[d] = -(2.0 * M_PI / n) * s - (M_PI / (double(n) * n)) * std::cos(n * t);
  }
  Eigen::MatrixXd R(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) R(i, j) = r[(i - j + N) % N];
  return cache[N] = R;
}
}  // namespace

GreenOperator::GreenOperator(Box dom, int images) : dom_(dom), images_(images) {
  if (dom.x0 != 0.0 || dom.y0 != 0.0 || dom.x1 != 1.0 || dom.y1 != 1.0)
    throw std::invalid_argument("GreenOperator: only the unit square is supported");
}

double GreenOperator::sum(Vec2 xi, Vec2 eta, bool drop_log) const {
  double x = xi[0], y = xi[1], xp = eta[0], yp = eta[1];
  double ax = std::abs(x - xp);
  double g = 0.5 * ax - 0.5 * (x * x + xp * xp) + 0.5 * (x + xp) - 1.0 / 3.0;
  const double cs[4] = {ax, x + xp, 2.0 - x - xp, 2.0 - ax};
  const double bs[2] = {y - yp, y + yp};
  double s = 0.0;
  for (int k = 0; k <= images_; ++k)
    for (int ci = 0; ci < 4; ++ci)
      for (int bi = 0; bi < 2; ++bi) {
        double a = cs[ci] + 2.0 * k;
        if (drop_log && k == 0 && ci == 0 && bi == 0) {
          double r2 = ax * ax + bs[0] * bs[0];
          double D = log_kernel_arg(a, bs[0]);
          // -(1/2pi) L - (1/2pi) log r = (1/4pi) log(D / r^2)
          double ratio = (r2 > 0.0) ? D / r2 : M_PI * M_PI;
          s += std::log(ratio) / (4.0 * M_PI);
          continue;
        }
        s += -log_series(a, bs[bi]) / kTwoPi;
      }
  return g + s;
}

double GreenOperator::operator()(Vec2 xi, Vec2 eta) const {
  if (xi[0] == eta[0] && xi[1] == eta[1]) throw std::domain_error("green: coincident points");
  return sum(xi, eta, false);
}

double GreenOperator::regular_part(Vec2 xi, Vec2 eta) const { return sum(xi, eta, true); }

Vec2 GreenOperator::grad_xi(Vec2 xi, Vec2 eta) const {
  double x = xi[0], y = xi[1], xp = eta[0], yp = eta[1];
  double sx = (x > xp) ? 1.0 : (x < xp ? -1.0 : 0.0);
  double ax = std::abs(x - xp);
  double gx = 0.5 * sx - x + 0.5, gy = 0.0;
  const double cs[4] = {ax, x + xp, 2.0 - x - xp, 2.0 - ax};
  const double dc[4] = {sx, 1.0, -1.0, -sx};
  const double bs[2] = {y - yp, y + yp};
  for (int k = 0; k <= images_; ++k)
    for (int ci = 0; ci < 4; ++ci)
      for (int bi = 0; bi < 2; ++bi) {
        double a = cs[ci] + 2.0 * k, b = bs[bi];
        double E = std::exp(-M_PI * a);
        double D = log_kernel_arg(a, b);
        double La = -M_PI * E * (std::cos(M_PI * b) - E) / D;
        double Lb = -M_PI * E * std::sin(M_PI * b) / D;
        gx += -La * dc[ci] / kTwoPi;
        gy += -Lb / kTwoPi;
      }
  return {gx, gy};
}

double green(const GreenOperator& op, Vec2 xi, Vec2 eta) { return op(xi, eta); }

ScalarField2D volume_potential(const GreenOperator&, const ScalarField2D& f) {
  return inverse_laplacian(f);
}

LayerPotential::LayerPotential(const GreenOperator& op, const Curve& c) : op_(op), curve_(c) {
  const int N = c.size();
  const Eigen::MatrixXd& R = kress_weights(N);
  std::vector<double> sp = c.speeds();
  const auto& P = c.points();
  A_.resize(N, N);
  w_.resize(N);
  for (int j = 0; j < N; ++j) w_[j] = kTwoPi / N * sp[j];
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      double gs;
      if (i == j) {
        gs = op.regular_part(P[i], P[i]) + std::log(sp[i] * sp[i]) / (4.0 * M_PI);
      } else {
        double dt = kTwoPi * (i - j) / N;
        double s = std::sin(0.5 * dt);
        gs = op(P[i], P[j]) - std::log(4.0 * s * s) / (4.0 * M_PI);
      }
      A_(i, j) = (R(i, j) / (4.0 * M_PI) + kTwoPi / N * gs) * sp[j];
    }
  }
  Eigen::MatrixXd M(N + 1, N + 1);
  M.topLeftCorner(N, N) = A_;
  M.topRightCorner(N, 1).setOnes();
  M.bottomLeftCorner(1, N) = w_.transpose();
  M(N, N) = 0.0;
  lu_.compute(M);
  cond_ = 1.0 / lu_.rcond();
  if (!std::isfinite(cond_) || cond_ > 1e12)
    throw std::runtime_error("LayerPotential: bordered system ill-conditioned, cond ~ " +
                             std::to_string(cond_));
}

Eigen::VectorXd LayerPotential::on_curve(const Eigen::VectorXd& h) const { return A_ * h; }

double LayerPotential::gamma_mean(const Eigen::VectorXd& f) const { return w_.dot(f) / w_.sum(); }

Eigen::VectorXd LayerPotential::filter(const Eigen::VectorXd& f) const {
  const int N = static_cast<int>(f.size());
  std::vector<double> v(f.data(), f.data() + N);
  TrigSeries s = TrigSeries::from_samples(v);
  int kc = static_cast<int>(std::floor((2.0 / 3.0) * (N / 2)));
  for (size_t k = 1; k <= s.a.size(); ++k)
    if (static_cast<int>(k) > kc) s.a[k - 1] = s.b[k - 1] = 0.0;
  Eigen::VectorXd out(N);
  for (int j = 0; j < N; ++j) out[j] = s.eval(kTwoPi * j / N);
  return out;
}

Eigen::VectorXd LayerPotential::S(const Eigen::VectorXd& v) const {
  double tol = 1e-8 * std::max(1.0, v.cwiseAbs().maxCoeff());
  if (std::abs(gamma_mean(v)) > tol) throw std::invalid_argument("S: density must have zero mean");
  Eigen::VectorXd p = on_curve(v);
  return p.array() - gamma_mean(p);
}

void LayerPotential::solve_bordered(const Eigen::VectorXd& g, double flux, Eigen::VectorXd& h,
                                    double& c) const {
  const int N = static_cast<int>(g.size());
  Eigen::VectorXd rhs(N + 1);
  rhs.head(N) = g;
  rhs[N] = flux;
  Eigen::VectorXd x = lu_.solve(rhs);
  h = x.head(N);
  c = x[N];
}

Eigen::VectorXd LayerPotential::T(const Eigen::VectorXd& g) const {
  Eigen::VectorXd gf = filter(g.array() - gamma_mean(g));
  Eigen::VectorXd h;
  double c;
  solve_bordered(gf, 0.0, h, c);
  h = filter(h);
  return h.array() - gamma_mean(h);
}

std::vector<double> LayerPotential::at(const std::vector<Vec2>& pts, const Eigen::VectorXd& h) const {
  const int N = curve_.size();
  const double hs = curve_.arc_length() / N;
  std::vector<double> hv(h.data(), h.data() + N);
  TrigSeries hser = TrigSeries::from_samples(hv);
  struct Refined {
    std::vector<Vec2> x;
    std::vector<double> wh;
  };
  std::map<int, Refined> cache;
  auto refined = [&](int F) -> const Refined& {
    auto it = cache.find(F);
    if (it != cache.end()) return it->second;
    Refined r;
    int M = N * F;
    r.x.resize(M);
    r.wh.resize(M);
    for (int j = 0; j < M; ++j) {
      double t = kTwoPi * j / M;
      r.x[j] = curve_.eval(t);
      r.wh[j] = kTwoPi / M * curve_.speed(t) * hser.eval(t);
    }
    return cache[F] = std::move(r);
  };
  refined(1);
  std::vector<double> out(pts.size());
  const auto& fine = curve_.fine_points();
  Eigen::VectorXd onc;
  for (size_t p = 0; p < pts.size(); ++p) {
    double d2 = std::numeric_limits<double>::infinity();
    int best = 0;
    for (int i = 0; i < static_cast<int>(fine.size()); ++i) {
      double dx = fine[i][0] - pts[p][0], dy = fine[i][1] - pts[p][1];
      if (dx * dx + dy * dy < d2) {
        d2 = dx * dx + dy * dy;
        best = i;
      }
    }
    double d = std::sqrt(d2);
    if (d < 1e-12 * std::max(1.0, hs)) {
      if (onc.size() == 0) onc = on_curve(h);
      std::vector<double> ov(onc.data(), onc.data() + N);
      out[p] = TrigSeries::from_samples(ov).eval(kTwoPi * best / fine.size());
      continue;
    }
    if (d < 4.0 * hs) {
      // near-curve point, use a locally refined rule
      d = std::abs(signed_distance(curve_, pts[p], 0.0).d);
      d = std::max(d, 1e-12);
    }
    int F = 1;
    while (F < 64 && d < 4.0 * hs / F) F *= 2;
    const Refined& r = refined(F);
    double s = 0.0;
    for (size_t j = 0; j < r.x.size(); ++j) s += op_(pts[p], r.x[j]) * r.wh[j];
    out[p] = s;
  }
  return out;
}

Eigen::VectorXd LayerPotential::neumann_jump(const Eigen::VectorXd& h) const {
  const int N = curve_.size();
  const double hs = curve_.arc_length() / N;
  const double delta = 0.5 * hs;
  Eigen::VectorXd phi0 = on_curve(h);
  std::vector<Vec2> pts;
  pts.reserve(8 * N);
  std::vector<Vec2> nu = curve_.normals();
  const auto& P = curve_.points();
  for (int i = 0; i < N; ++i)
    for (int side = 0; side < 2; ++side)
      for (int k = 1; k <= 4; ++k) {
        double s = (side == 0 ? 1.0 : -1.0) * k * delta;
        pts.push_back({P[i][0] + s * nu[i][0], P[i][1] + s * nu[i][1]});
      }
  std::vector<double> v = at(pts, h);
  Eigen::VectorXd jump(N);
  for (int i = 0; i < N; ++i) {
    const double* o = &v[8 * i];
    const double* in = &v[8 * i + 4];
    double f0 = phi0[i];
    double d_out = (-25 * f0 + 48 * o[0] - 36 * o[1] + 16 * o[2] - 3 * o[3]) / (12 * delta);
    double d_in = (-25 * f0 + 48 * in[0] - 36 * in[1] + 16 * in[2] - 3 * in[3]) / (12 * delta);
    jump[i] = d_out + d_in;
  }
  return jump;
}

std::vector<double> LayerPotential::extension_neumann(const Eigen::VectorXd& v,
                                                      const std::vector<Vec2>& pts) const {
  double m = gamma_mean(on_curve(v));
  std::vector<double> out = at(pts, v);
  for (double& x : out) x -= m;
  return out;
}

std::vector<double> LayerPotential::extension_dirichlet(const Eigen::VectorXd& g,
                                                        const std::vector<Vec2>& pts) const {
  std::vector<double> out = extension_neumann(T(g), pts);
  double m = gamma_mean(g);
  for (double& x : out) x += m;
  return out;
}

Eigen::VectorXd dn_inverse(const LayerPotential& lp, const Eigen::VectorXd& v) { return lp.S(v); }
Eigen::VectorXd dirichlet_neumann(const LayerPotential& lp, const Eigen::VectorXd& g) { return lp.T(g); }
Eigen::VectorXd neumann_jump(const LayerPotential& lp, const Eigen::VectorXd& h) {
  return lp.neumann_jump(h);
}

}  // namespace fch
