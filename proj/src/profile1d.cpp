#include "fch/profile1d.h"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fch {

namespace {
const double kSqrt2 = std::sqrt(2.0);

// smooth step 0 -> 1 on [0,1] built from exp(-1/x)
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double smooth_step_d1(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  double da = a / (x * x), db = -b / ((1.0 - x) * (1.0 - x));
  return (da * b - a * db) / ((a + b) * (a + b));
}
}  // namespace

Profile1D::Profile1D(double zm, int nn) : z_max(zm), n(nn), v(nn, 0.0) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("Profile1D: n must be odd and >= 3");
}

Profile1D Profile1D::sample(const std::function<double(double)>& fn, double z_max, int n) {
  Profile1D p(z_max, n);
  for (int i = 0; i < n; ++i) p.v[i] = fn(p.z(i));
  return p;
}

double Profile1D::eval(double zz) const {
  if (zz < -z_max || zz > z_max) return 0.0;
  double t = (zz + z_max) / h();
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 1, n - 3);
  double x = t - i;
  double p0 = v[i - 1], p1 = v[i], p2 = v[i + 1], p3 = v[i + 2];
  // 4-point Lagrange on nodes -1,0,1,2
  return p0 * (-x * (x - 1) * (x - 2) / 6) + p1 * ((x + 1) * (x - 1) * (x - 2) / 2) +
         p2 * (-(x + 1) * x * (x - 2) / 2) + p3 * ((x + 1) * x * (x - 1) / 6);
}

double Profile1D::eval_d1(double zz) const {
  if (zz < -z_max || zz > z_max) return 0.0;
  double t = (zz + z_max) / h();
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 1, n - 3);
  double x = t - i;
  double p0 = v[i - 1], p1 = v[i], p2 = v[i + 1], p3 = v[i + 2];
  double d0 = -(3 * x * x - 6 * x + 2) / 6;
  double d1 = (3 * x * x - 4 * x - 1) / 2;
  double d2 = -(3 * x * x - 2 * x - 2) / 2;
  double d3 = (3 * x * x - 1) / 6;
  return (p0 * d0 + p1 * d1 + p2 * d2 + p3 * d3) / h();
}

double profile(double z) { return std::tanh(z / kSqrt2); }

double profile_d1(double z) {
  double c = std::cosh(z / kSqrt2);
  return 1.0 / (kSqrt2 * c * c);
}

// m'' = m^3 - m
double profile_d2(double z) {
  double m = profile(z);
  return m * m * m - m;
}

double profile_d3(double z) { return fprime(profile(z)) * profile_d1(z); }

double fprime(double m) { return 3.0 * m * m - 1.0; }

double profile_ode_residual(const Profile1D& p) {
  double h2 = p.h() * p.h(), r = 0.0;
  for (int i = 1; i + 1 < p.n; ++i) {
    double m = p.v[i];
    double d2 = (p.v[i - 1] - 2.0 * m + p.v[i + 1]) / h2;
    r = std::max(r, std::abs(-d2 + m * m * m - m));
  }
  return r;
}

double cutoff(double u) {
  double a = std::abs(u);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return 1.0 - smooth_step(2.0 * a - 1.0);
}

double cutoff_d1(double u) {
  double a = std::abs(u);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  double s = u > 0 ? 1.0 : -1.0;
  return -2.0 * s * smooth_step_d1(2.0 * a - 1.0);
}

static void check_eps(double eps, double eps0) {
  if (!(eps > 0.0) || eps > eps0) throw std::domain_error("glued_profile: need 0 < eps <= eps0");
}

double glued_profile(double z, double eps, double eps0) {
  check_eps(eps, eps0);
  double r = cutoff(eps * z / eps0);
  if (r == 1.0) return profile(z);
  double sg = z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0);
  if (r == 0.0) return sg;
  return r * profile(z) + (1.0 - r) * sg;
}

double glued_profile_d1(double z, double eps, double eps0) {
  check_eps(eps, eps0);
  double u = eps * z / eps0;
  double r = cutoff(u);
  if (r == 0.0) return 0.0;
  double sg = z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0);
  return r * profile_d1(z) + cutoff_d1(u) * (eps / eps0) * (profile(z) - sg);
}

double integrate(const Profile1D& p) {
  double s = 0.0;
  for (int i = 0; i < p.n; ++i) s += p.v[i];
  s -= 0.5 * (p.v.front() + p.v.back());
  return s * p.h();
}

double surface_tension(double z_max, int n) {
  Profile1D q = Profile1D::sample([](double z) { double d = profile_d1(z); return d * d; }, z_max, n);
  return 0.25 * integrate(q);
}

double surface_tension() {
  static const double S = surface_tension(10.0, 2001);
  return S;
}

Profile1D apply_L(const Profile1D& w) {
  Profile1D out(w.z_max, w.n);
  const int n = w.n;
  double h2 = w.h() * w.h();
  for (int i = 0; i < n; ++i) {
    double d2;
    if (i == 0)
      d2 = (2 * w.v[0] - 5 * w.v[1] + 4 * w.v[2] - w.v[3]) / h2;  // one-sided, low accuracy
    else if (i == n - 1)
      d2 = (2 * w.v[n - 1] - 5 * w.v[n - 2] + 4 * w.v[n - 3] - w.v[n - 4]) / h2;
    else
      d2 = (w.v[i - 1] - 2 * w.v[i] + w.v[i + 1]) / h2;
    out.v[i] = -d2 + fprime(profile(w.z(i))) * w.v[i];
  }
  return out;
}

namespace {

// Bordered system [L_h, k; k^T W, 0] on interior nodes, k = mbar'.
struct BorderedL {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<double> kern;
  bool ok = false;
};

std::shared_ptr<BorderedL> bordered_for(double z_max, int n) {
  static std::mutex mtx;
  static std::map<std::pair<double, int>, std::shared_ptr<BorderedL>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(z_max, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto b = std::make_shared<BorderedL>();
  Profile1D grid(z_max, n);
  double h = grid.h(), h2 = h * h;
  int m = n - 2;
  b->kern.resize(n);
  for (int i = 0; i < n; ++i) b->kern[i] = profile_d1(grid.z(i));
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(5 * m + 2);
  for (int j = 0; j < m; ++j) {
    int i = j + 1;
    t.emplace_back(j, j, 2.0 / h2 + fprime(profile(grid.z(i))));
    if (j > 0) t.emplace_back(j, j - 1, -1.0 / h2);
    if (j + 1 < m) t.emplace_back(j, j + 1, -1.0 / h2);
    t.emplace_back(j, m, b->kern[i]);
    t.emplace_back(m, j, h * b->kern[i]);
  }
  Eigen::SparseMatrix<double> A(m + 1, m + 1);
  A.setFromTriplets(t.begin(), t.end());
  b->lu.compute(A);
  b->ok = (b->lu.info() == Eigen::Success);
  cache[key] = b;
  return b;
}

}  // namespace

SolvabilityReport solve_L(const Profile1D& A) {
  SolvabilityReport rep;
  const int n = A.n;
  double h = A.h();
  auto B = bordered_for(A.z_max, n);
  if (!B->ok) throw std::runtime_error("solve_L: singular bordered system");
  const auto& k = B->kern;

  double amax = 0.0;
  for (double a : A.v) amax = std::max(amax, std::abs(a));
  if (amax > 0.0)
    rep.tails_decay = std::max(std::abs(A.v.front()), std::abs(A.v.back())) <= 1e-6 * amax;

  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    double wgt = (i == 0 || i == n - 1) ? 0.5 * h : h;
    num += wgt * A.v[i] * k[i];
    den += wgt * k[i] * k[i];
  }
  rep.defect = num / den;
  rep.alpha = rep.defect;

  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = A.v[i] - rep.defect * k[i];
  // far-field values: -w'' + 2w = A with A nearly constant
  double wl = g.front() / 2.0, wr = g.back() / 2.0;

  int m = n - 2;
  Eigen::VectorXd rhs(m + 1);
  double h2 = h * h;
  for (int j = 0; j < m; ++j) rhs[j] = g[j + 1];
  rhs[0] += wl / h2;
  rhs[m - 1] += wr / h2;
  rhs[m] = -0.5 * h * (k.front() * wl + k.back() * wr);
  Eigen::VectorXd sol = B->lu.solve(rhs);

  Profile1D w(A.z_max, n);
  w.v[0] = wl;
  w.v[n - 1] = wr;
  for (int j = 0; j < m; ++j) w.v[j + 1] = sol[j];
  int c = w.center();
  double shift = w.v[c] / k[c];
  for (int i = 0; i < n; ++i) w.v[i] -= shift * k[i];
  w.v[c] = 0.0;
  rep.solution = std::move(w);
  return rep;
}

}  // namespace fch
