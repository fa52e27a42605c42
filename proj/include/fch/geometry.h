#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fch {

using Vec2 = std::array<double, 2>;

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LifetimeExceeded : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Real trigonometric series a0 + sum_k (a_k cos kt + b_k sin kt), k = 1..M.
struct TrigSeries {
  double a0 = 0.0;
  std::vector<double> a, b;
  static TrigSeries from_samples(const std::vector<double>& f);
  double eval(double t) const;
  double d1(double t) const;
};

// Closed counterclockwise curve through markers at parameters t_j = 2*pi*j/N,
// interpolated by a trigonometric polynomial. Derivatives are in t.
class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<Vec2> pts, Box dom = {}, bool check = true);

  static Curve circle(Vec2 c, double R, int n, Box dom = {});
  static Curve ellipse(Vec2 c, double a, double b, int n, Box dom = {});
  // r(theta) = R(1 + amp cos(k theta)), resampled to uniform arclength
  static Curve perturbed_circle(Vec2 c, double R, double amp, int k, int n, Box dom = {});

  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<Vec2>& points() const { return pts_; }
  const Box& domain() const { return dom_; }
  double param(int j) const;

  Vec2 eval(double t) const;
  Vec2 d1(double t) const;
  Vec2 d2(double t) const;
  Vec2 d3(double t) const;
  double speed(double t) const;
  Vec2 normal(double t) const;  // outward
  double curvature(double t) const;
  double curvature_dt(double t) const;  // derivative of K in t

  std::vector<double> curvatures() const;
  std::vector<double> speeds() const;
  std::vector<Vec2> normals() const;

  double arc_length() const;
  double enclosed_area() const;
  double max_curvature() const { return kmax_; }
  double boundary_margin() const;
  bool is_simple() const;

  // new curve with n markers equally spaced in arclength
  Curve resampled(int n) const;
  // same markers with the top of the spectrum damped
  Curve filtered() const;

  // integral over the curve of samples given at the markers
  double integrate(const std::vector<double>& f) const;
  double mean(const std::vector<double>& f) const;
  // trig interpolation of marker samples, evaluated at t
  double interp(const std::vector<double>& f, double t) const;

  // 4N samples of the interpolant at t = 2*pi*i/(4N)
  const std::vector<Vec2>& fine_points() const { return fine_; }

 private:
  void build();
  Vec2 deriv(double t, int p) const;
  std::vector<Vec2> pts_;
  Box dom_;
  int m_ = 0;  // highest retained mode
  double ax0_ = 0.0, ay0_ = 0.0;
  std::vector<double> ax_, bx_, ay_, by_;
  double kmax_ = 0.0;
  std::vector<Vec2> fine_;
};

double curvature(const Curve& c, double t);
double max_curvature(const Curve& c);
double enclosed_area(const Curve& c);
double arc_length(const Curve& c);

struct TubularCoords {
  double d = 0.0;   // signed distance, negative inside
  double s = 0.0;   // curve parameter t of the closest point
  Vec2 foot{0.0, 0.0};
  bool valid = false;     // |d| <= eps0
  bool accurate = true;   // Newton converged
};

TubularCoords signed_distance(const Curve& c, Vec2 xi, double eps0);

// Batched version for many points, only resolving points within band of Gamma
// exactly; points further away get valid = false and d set from a coarse estimate.
std::vector<TubularCoords> signed_distance_many(const Curve& c, const std::vector<Vec2>& pts,
                                                double eps0, double band);

// 1 - d K(s). The distance d is measured positive toward the enclosed region,
// which is the orientation the local Laplacian expansion is written in.
double tubular_jacobian(const Curve& c, double d, double s);

struct LaplacianCoeffs {
  double a = 0.0, b = 0.0, c = 0.0;
};
LaplacianCoeffs laplacian_coeffs(int n, double z, double K, double dK_ds);

struct EvolveOptions {
  double k0 = 1e9;          // lifetime ends when max curvature exceeds k0
  double min_margin = 0.0;  // and when the curve comes closer than this to the box
  int markers = 0;          // 0 keeps the marker count
  bool filter = true;
};

using VelocityFn = std::function<std::vector<double>(const Curve&)>;

// One Euler move by v*nu*dt followed by uniform re-spacing.
Curve evolve_euler(const Curve& c, const std::vector<double>& v, double dt,
                   const EvolveOptions& opt = {});
// Midpoint RK2 with velocity callback.
Curve evolve(const Curve& c, const VelocityFn& vel, double dt, const EvolveOptions& opt = {});

// symmetric Hausdorff distance between the interpolated curves
double hausdorff(const Curve& a, const Curve& b, int samples = 1024);

}  // namespace fch
