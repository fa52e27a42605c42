#include "fch/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fch {

namespace {
const double kTwoPi = 2.0 * M_PI;

double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
Vec2 sub(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }

int retained_modes(int n) { return (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2; }

void dft(const std::vector<double>& f, int m, double& a0, std::vector<double>& a,
         std::vector<double>& b) {
  const int n = static_cast<int>(f.size());
  std::vector<double> ct(n), st(n);
  for (int j = 0; j < n; ++j) {
    ct[j] = std::cos(kTwoPi * j / n);
    st[j] = std::sin(kTwoPi * j / n);
  }
  a0 = 0.0;
  for (double v : f) a0 += v;
  a0 /= n;
  a.assign(m, 0.0);
  b.assign(m, 0.0);
  for (int k = 1; k <= m; ++k) {
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < n; ++j) {
      int idx = static_cast<int>((static_cast<long>(k) * j) % n);
      sa += f[j] * ct[idx];
      sb += f[j] * st[idx];
    }
    a[k - 1] = 2.0 * sa / n;
    b[k - 1] = 2.0 * sb / n;
  }
}

// p-th derivative of the series at t
double series_eval(double a0, const std::vector<double>& a, const std::vector<double>& b,
                   double t, int p) {
  double c1 = std::cos(t), s1 = std::sin(t);
  double ck = 1.0, sk = 0.0;
  double r = (p == 0) ? a0 : 0.0;
  const int m = static_cast<int>(a.size());
  for (int k = 1; k <= m; ++k) {
    double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    double kp = 1.0;
    for (int q = 0; q < p; ++q) kp *= k;
    double term;
    switch (p % 4) {
      case 0: term = a[k - 1] * ck + b[k - 1] * sk; break;
      case 1: term = -a[k - 1] * sk + b[k - 1] * ck; break;
      case 2: term = -a[k - 1] * ck - b[k - 1] * sk; break;
      default: term = a[k - 1] * sk - b[k - 1] * ck; break;
    }
    r += kp * term;
  }
  return r;
}

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  double d1 = cross(sub(p2, p1), sub(q1, p1));
  double d2 = cross(sub(p2, p1), sub(q2, p1));
  double d3 = cross(sub(q2, q1), sub(p1, q1));
  double d4 = cross(sub(q2, q1), sub(p2, q1));
  // touching counts as crossing; the caller skips neighbouring segments
  auto straddle = [](double a, double b) { return (a >= 0 && b <= 0) || (a <= 0 && b >= 0); };
  if (d1 == 0 && d2 == 0) {
    auto overlap = [](double a0, double a1, double b0, double b1) {
      return std::max(std::min(a0, a1), std::min(b0, b1)) <= std::min(std::max(a0, a1), std::max(b0, b1));
    };
    return overlap(p1[0], p2[0], q1[0], q2[0]) && overlap(p1[1], p2[1], q1[1], q2[1]);
  }
  return straddle(d1, d2) && straddle(d3, d4);
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool in = false;
  const int n = static_cast<int>(poly.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a[1] > p[1]) != (b[1] > p[1])) {
      double x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
      if (p[0] < x) in = !in;
    }
  }
  return in;
}
}  // namespace

TrigSeries TrigSeries::from_samples(const std::vector<double>& f) {
  TrigSeries s;
  dft(f, retained_modes(static_cast<int>(f.size())), s.a0, s.a, s.b);
  return s;
}

double TrigSeries::eval(double t) const { return series_eval(a0, a, b, t, 0); }
double TrigSeries::d1(double t) const { return series_eval(a0, a, b, t, 1); }

Curve::Curve(std::vector<Vec2> pts, Box dom, bool check) : pts_(std::move(pts)), dom_(dom) {
  if (pts_.size() < 8) throw GeometryError("Curve: need at least 8 markers");
  build();
  if (check) {
    if (enclosed_area() <= 0.0) throw GeometryError("Curve: not counterclockwise");
    if (!is_simple()) throw GeometryError("Curve: self-intersecting");
    if (boundary_margin() <= 0.0) throw GeometryError("Curve: leaves the domain");
  }
}

void Curve::build() {
  const int n = size();
  m_ = retained_modes(n);
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    xs[j] = pts_[j][0];
    ys[j] = pts_[j][1];
  }
  dft(xs, m_, ax0_, ax_, bx_);
  dft(ys, m_, ay0_, ay_, by_);
  const int nf = 4 * n;
  fine_.resize(nf);
  kmax_ = 0.0;
  for (int i = 0; i < nf; ++i) {
    double t = kTwoPi * i / nf;
    fine_[i] = eval(t);
    kmax_ = std::max(kmax_, std::abs(curvature(t)));
  }
}

double Curve::param(int j) const { return kTwoPi * j / size(); }

Vec2 Curve::deriv(double t, int p) const {
  return {series_eval(ax0_, ax_, bx_, t, p), series_eval(ay0_, ay_, by_, t, p)};
}

Vec2 Curve::eval(double t) const { return deriv(t, 0); }
Vec2 Curve::d1(double t) const { return deriv(t, 1); }
Vec2 Curve::d2(double t) const { return deriv(t, 2); }
Vec2 Curve::d3(double t) const { return deriv(t, 3); }

double Curve::speed(double t) const {
  Vec2 v = d1(t);
  return std::hypot(v[0], v[1]);
}

Vec2 Curve::normal(double t) const {
  Vec2 v = d1(t);
  double s = std::hypot(v[0], v[1]);
  return {v[1] / s, -v[0] / s};
}

double Curve::curvature(double t) const {
  Vec2 p = d1(t), q = d2(t);
  double s = std::hypot(p[0], p[1]);
  return cross(p, q) / (s * s * s);
}

double Curve::curvature_dt(double t) const {
  Vec2 p = d1(t), q = d2(t), r = d3(t);
  double s2 = dot(p, p);
  return (cross(p, r) * s2 - 3.0 * cross(p, q) * dot(p, q)) / (s2 * s2 * std::sqrt(s2));
}

std::vector<double> Curve::curvatures() const {
  std::vector<double> k(size());
  for (int j = 0; j < size(); ++j) k[j] = curvature(param(j));
  return k;
}

std::vector<double> Curve::speeds() const {
  std::vector<double> s(size());
  for (int j = 0; j < size(); ++j) s[j] = speed(param(j));
  return s;
}

std::vector<Vec2> Curve::normals() const {
  std::vector<Vec2> nv(size());
  for (int j = 0; j < size(); ++j) nv[j] = normal(param(j));
  return nv;
}

double Curve::arc_length() const {
  double L = 0.0;
  for (int j = 0; j < size(); ++j) L += speed(param(j));
  return L * kTwoPi / size();
}

double Curve::enclosed_area() const {
  double A = 0.0;
  for (int j = 0; j < size(); ++j) {
    Vec2 p = pts_[j], v = d1(param(j));
    A += p[0] * v[1] - p[1] * v[0];
  }
  return 0.5 * A * kTwoPi / size();
}

double Curve::boundary_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec2& p : fine_) {
    m = std::min({m, p[0] - dom_.x0, dom_.x1 - p[0], p[1] - dom_.y0, dom_.y1 - p[1]});
  }
  return m;
}

bool Curve::is_simple() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    Vec2 p1 = pts_[i], p2 = pts_[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(p1, p2, pts_[j], pts_[(j + 1) % n])) return false;
    }
  }
  return true;
}

double Curve::integrate(const std::vector<double>& f) const {
  double s = 0.0;
  for (int j = 0; j < size(); ++j) s += f[j] * speed(param(j));
  return s * kTwoPi / size();
}

double Curve::mean(const std::vector<double>& f) const { return integrate(f) / arc_length(); }

double Curve::interp(const std::vector<double>& f, double t) const {
  return TrigSeries::from_samples(f).eval(t);
}

Curve Curve::resampled(int n) const {
  const int nf = 4 * std::max(size(), n);
  std::vector<double> sp(nf);
  for (int i = 0; i < nf; ++i) sp[i] = speed(kTwoPi * i / nf);
  TrigSeries ss = TrigSeries::from_samples(sp);
  // s(t) = a0 t + sum (a_k sin kt - b_k (cos kt - 1)) / k
  auto arc = [&](double t) {
    double r = ss.a0 * t;
    for (size_t k = 1; k <= ss.a.size(); ++k)
      r += (ss.a[k - 1] * std::sin(k * t) - ss.b[k - 1] * (std::cos(k * t) - 1.0)) / k;
    return r;
  };
  double L = ss.a0 * kTwoPi;
  std::vector<Vec2> out(n);
  double t = 0.0;
  for (int j = 0; j < n; ++j) {
    double target = L * j / n;
    if (j > 0) t += kTwoPi / n;
    for (int it = 0; it < 50; ++it) {
      double g = arc(t) - target;
      double dt = g / ss.eval(t);
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    out[j] = eval(t);
  }
  return Curve(std::move(out), dom_, false);
}

Curve Curve::filtered() const {
  std::vector<Vec2> out(size());
  auto damp = [&](const std::vector<double>& a0, const std::vector<double>& b0,
                  std::vector<double>& a, std::vector<double>& b) {
    a = a0;
    b = b0;
    for (int k = 1; k <= m_; ++k) {
      double sigma = std::exp(-36.0 * std::pow(static_cast<double>(k) / m_, 36));
      a[k - 1] *= sigma;
      b[k - 1] *= sigma;
    }
  };
  std::vector<double> ax, bx, ay, by;
  damp(ax_, bx_, ax, bx);
  damp(ay_, by_, ay, by);
  for (int j = 0; j < size(); ++j) {
    double t = param(j);
    out[j] = {series_eval(ax0_, ax, bx, t, 0), series_eval(ay0_, ay, by, t, 0)};
  }
  return Curve(std::move(out), dom_, false);
}

double curvature(const Curve& c, double t) { return c.curvature(t); }
double max_curvature(const Curve& c) { return c.max_curvature(); }
double enclosed_area(const Curve& c) { return c.enclosed_area(); }
double arc_length(const Curve& c) { return c.arc_length(); }

Curve Curve::circle(Vec2 c, double R, int n, Box dom) {
  std::vector<Vec2> p(n);
  for (int j = 0; j < n; ++j) {
    double t = kTwoPi * j / n;
    p[j] = {c[0] + R * std::cos(t), c[1] + R * std::sin(t)};
  }
  return Curve(std::move(p), dom);
}

Curve Curve::ellipse(Vec2 c, double a, double b, int n, Box dom) {
  int nf = std::max(4 * n, 256);
  std::vector<Vec2> p(nf);
  for (int j = 0; j < nf; ++j) {
    double t = kTwoPi * j / nf;
    p[j] = {c[0] + a * std::cos(t), c[1] + b * std::sin(t)};
  }
  return Curve(std::move(p), dom, false).resampled(n);
}

Curve Curve::perturbed_circle(Vec2 c, double R, double amp, int k, int n, Box dom) {
  int nf = std::max(4 * n, 256);
  std::vector<Vec2> p(nf);
  for (int j = 0; j < nf; ++j) {
    double t = kTwoPi * j / nf;
    double r = R * (1.0 + amp * std::cos(k * t));
    p[j] = {c[0] + r * std::cos(t), c[1] + r * std::sin(t)};
  }
  return Curve(std::move(p), dom, false).resampled(n);
}

namespace {
TubularCoords project(const Curve& c, Vec2 xi, int start, double eps0) {
  const auto& fine = c.fine_points();
  const int nf = static_cast<int>(fine.size());
  TubularCoords tc;
  double t = kTwoPi * start / nf;
  bool conv = false;
  for (int it = 0; it < 30; ++it) {
    Vec2 x = c.eval(t), p = c.d1(t), q = c.d2(t);
    Vec2 r = sub(x, xi);
    double g = dot(r, p), gp = dot(p, p) + dot(r, q);
    if (gp <= 0.0) gp = dot(p, p);
    double step = g / gp;
    step = std::clamp(step, -kTwoPi / nf * 4, kTwoPi / nf * 4);
    t -= step;
    if (std::abs(step) < 1e-14) {
      conv = true;
      break;
    }
  }
  Vec2 foot = c.eval(t);
  Vec2 r = sub(xi, foot);
  double dist = std::hypot(r[0], r[1]);
  double dfine = std::hypot(xi[0] - fine[start][0], xi[1] - fine[start][1]);
  if (!conv || dist > dfine + 1e-12) {
    tc.accurate = conv;
    if (dist > dfine) {
      t = kTwoPi * start / nf;
      foot = fine[start];
      r = sub(xi, foot);
      dist = dfine;
      tc.accurate = false;
    }
  }
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  double sgn;
  double hf = c.arc_length() / nf;
  if (dist < 2.0 * hf)
    sgn = dot(r, c.normal(t)) >= 0.0 ? 1.0 : -1.0;
  else
    sgn = point_in_polygon(fine, xi) ? -1.0 : 1.0;
  tc.d = sgn * dist;
  tc.s = t;
  tc.foot = foot;
  tc.valid = dist <= eps0;
  return tc;
}

int nearest_fine(const std::vector<Vec2>& fine, Vec2 xi, double& d2min) {
  int best = 0;
  d2min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(fine.size()); ++i) {
    double dx = fine[i][0] - xi[0], dy = fine[i][1] - xi[1];
    double d2 = dx * dx + dy * dy;
    if (d2 < d2min) {
      d2min = d2;
      best = i;
    }
  }
  return best;
}
}  // namespace

TubularCoords signed_distance(const Curve& c, Vec2 xi, double eps0) {
  double d2;
  int i = nearest_fine(c.fine_points(), xi, d2);
  return project(c, xi, i, eps0);
}

std::vector<TubularCoords> signed_distance_many(const Curve& c, const std::vector<Vec2>& pts,
                                                double eps0, double band) {
  std::vector<TubularCoords> out(pts.size());
  const auto& fine = c.fine_points();
  for (size_t k = 0; k < pts.size(); ++k) {
    double d2;
    int i = nearest_fine(fine, pts[k], d2);
    if (std::sqrt(d2) <= band) {
      out[k] = project(c, pts[k], i, eps0);
    } else {
      TubularCoords tc;
      double dist = std::sqrt(d2);
      tc.d = point_in_polygon(fine, pts[k]) ? -dist : dist;
      tc.s = kTwoPi * i / fine.size();
      tc.foot = fine[i];
      tc.valid = false;
      tc.accurate = false;
      out[k] = tc;
    }
  }
  return out;
}

double tubular_jacobian(const Curve& c, double d, double s) {
  if (std::abs(d) * c.max_curvature() >= 1.0)
    throw std::domain_error("tubular_jacobian: |d| >= 1/k(Gamma)");
  return 1.0 - d * c.curvature(s);
}

LaplacianCoeffs laplacian_coeffs(int n, double z, double K, double dK_ds) {
  if (n < 1) throw std::invalid_argument("laplacian_coeffs: n >= 1");
  LaplacianCoeffs r;
  r.a = -std::pow(K, n) * std::pow(z, n - 1);
  if (n >= 2) r.b = (n - 1) * std::pow(K, n - 2) * std::pow(z, n - 2);
  if (n >= 3) r.c = 0.5 * (n - 1) * (n - 2) * std::pow(z, n - 2) * std::pow(K, n - 3) * dK_ds;
  return r;
}

namespace {
Curve finish_step(std::vector<Vec2> p, const Curve& ref, const EvolveOptions& opt) {
  Curve raw(std::move(p), ref.domain(), false);
  if (raw.enclosed_area() <= 0.0 || !raw.is_simple())
    throw GeometryError("evolve: step produced a self-intersecting curve, reduce dt");
  if (opt.filter) raw = raw.filtered();
  int n = opt.markers > 0 ? opt.markers : ref.size();
  Curve out = raw.resampled(n);
  if (out.max_curvature() > opt.k0) throw LifetimeExceeded("evolve: max curvature exceeded k0");
  if (out.boundary_margin() <= opt.min_margin)
    throw LifetimeExceeded("evolve: curve reached the boundary margin");
  return out;
}

std::vector<Vec2> moved(const Curve& c, const std::vector<double>& v, double dt) {
  if (static_cast<int>(v.size()) != c.size()) throw std::invalid_argument("evolve: velocity size");
  std::vector<Vec2> p(c.size());
  for (int j = 0; j < c.size(); ++j) {
    if (!std::isfinite(v[j])) throw std::invalid_argument("evolve: non-finite velocity");
    Vec2 nu = c.normal(c.param(j));
    p[j] = {c.points()[j][0] + dt * v[j] * nu[0], c.points()[j][1] + dt * v[j] * nu[1]};
  }
  return p;
}
}  // namespace

Curve evolve_euler(const Curve& c, const std::vector<double>& v, double dt,
                   const EvolveOptions& opt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  return finish_step(moved(c, v, dt), c, opt);
}

Curve evolve(const Curve& c, const VelocityFn& vel, double dt, const EvolveOptions& opt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  std::vector<double> v1 = vel(c);
  Curve mid(moved(c, v1, 0.5 * dt), c.domain(), false);
  if (mid.enclosed_area() <= 0.0 || !mid.is_simple())
    throw GeometryError("evolve: half step produced a self-intersecting curve, reduce dt");
  std::vector<double> v2 = vel(mid);
  std::vector<Vec2> p(c.size());
  for (int j = 0; j < c.size(); ++j) {
    Vec2 nu = mid.normal(mid.param(j));
    p[j] = {c.points()[j][0] + dt * v2[j] * nu[0], c.points()[j][1] + dt * v2[j] * nu[1]};
  }
  return finish_step(std::move(p), c, opt);
}

double hausdorff(const Curve& a, const Curve& b, int samples) {
  auto one_way = [samples](const Curve& p, const Curve& q) {
    double h = 0.0;
    for (int i = 0; i < samples; ++i) {
      Vec2 x = p.eval(kTwoPi * i / samples);
      h = std::max(h, std::abs(signed_distance(q, x, 0.0).d));
    }
    return h;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace fch
