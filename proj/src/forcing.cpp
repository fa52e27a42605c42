#include "fch/forcing.h"

#include <cmath>
#include <sstream>

namespace fch {

namespace {
CosineCoeffs zeros(int nx, int ny) { return CosineCoeffs{nx, ny, std::vector<double>(size_t(nx) * ny, 0.0)}; }

CosineCoeffs resized(const CosineCoeffs& a, int nx, int ny) {
  CosineCoeffs b = zeros(nx, ny);
  for (int l = 0; l < std::min(ny, a.ny); ++l)
    for (int k = 0; k < std::min(nx, a.nx); ++k) b(k, l) = a(k, l);
  return b;
}
}  // namespace

ForcingField::ForcingField() : a_(zeros(1, 1)), desc_("0") {}

ForcingField ForcingField::constant(double c) {
  ForcingField f;
  f.a_(0, 0) = c;
  std::ostringstream s;
  s << c;
  f.desc_ = s.str();
  return f;
}

ForcingField ForcingField::cosine(double amp, int k, int l) {
  ForcingField f;
  f.a_ = zeros(k + 1, l + 1);
  f.a_(k, l) = amp;
  std::ostringstream s;
  s << amp << "*cos(" << k << "pi x)cos(" << l << "pi y)";
  f.desc_ = s.str();
  return f;
}

ForcingField ForcingField::gaussian(double amp, Vec2 x0, double sigma, int modes) {
  auto g = ScalarField2D::from_function(modes, modes, [&](double x, double y) {
    double r2 = (x - x0[0]) * (x - x0[0]) + (y - x0[1]) * (y - x0[1]);
    return amp * std::exp(-r2 / (2 * sigma * sigma));
  });
  ForcingField f;
  f.a_ = dct_forward(g);
  std::ostringstream s;
  s << amp << "*gauss(" << x0[0] << "," << x0[1] << ";" << sigma << ")";
  f.desc_ = s.str();
  return f;
}

ForcingField ForcingField::from_coeffs(CosineCoeffs a) {
  ForcingField f;
  f.a_ = std::move(a);
  f.desc_ = "series";
  return f;
}

double ForcingField::operator()(Vec2 p) const { return eval_spectral(a_, p[0], p[1]); }

Vec2 ForcingField::grad(Vec2 p) const {
  return {eval_spectral_dx(a_, p[0], p[1]), eval_spectral_dy(a_, p[0], p[1])};
}

double ForcingField::laplacian(Vec2 p) const {
  CosineCoeffs b = a_;
  for (int l = 0; l < b.ny; ++l)
    for (int k = 0; k < b.nx; ++k) b(k, l) *= -M_PI * M_PI * (double(k) * k + double(l) * l);
  return eval_spectral(b, p[0], p[1]);
}

bool ForcingField::is_zero() const {
  for (double v : a_.c)
    if (v != 0.0) return false;
  return true;
}

ScalarField2D ForcingField::sample(int nx, int ny) const { return dct_inverse(resized(a_, nx, ny)); }

std::vector<double> ForcingField::sample(const std::vector<Vec2>& pts) const {
  std::vector<double> out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) out[i] = (*this)(pts[i]);
  return out;
}

double ForcingField::wall_flux() const {
  double m = 0.0;
  for (int q = 0; q <= 32; ++q) {
    double t = q / 32.0;
    m = std::max(m, std::abs(eval_spectral_dx(a_, 0.0, t)));
    m = std::max(m, std::abs(eval_spectral_dx(a_, 1.0, t)));
    m = std::max(m, std::abs(eval_spectral_dy(a_, t, 0.0)));
    m = std::max(m, std::abs(eval_spectral_dy(a_, t, 1.0)));
  }
  return m;
}

ForcingField& ForcingField::operator+=(const ForcingField& o) {
  int nx = std::max(a_.nx, o.a_.nx), ny = std::max(a_.ny, o.a_.ny);
  CosineCoeffs b = resized(a_, nx, ny), c = resized(o.a_, nx, ny);
  for (size_t i = 0; i < b.c.size(); ++i) b.c[i] += c.c[i];
  a_ = std::move(b);
  desc_ = desc_ + " + " + o.desc_;
  return *this;
}

ForcingField ForcingField::operator+(const ForcingField& o) const {
  ForcingField f = *this;
  return f += o;
}

ForcingField ForcingField::operator*(double s) const {
  ForcingField f = *this;
  for (double& v : f.a_.c) v *= s;
  std::ostringstream d;
  d << s << "*(" << desc_ << ")";
  f.desc_ = d.str();
  return f;
}

ForcingField ForcingExpansion::G1_at(double eps) const {
  ForcingField f;
  double p = 1.0;
  for (const auto& g : G1) {
    f += g * p;
    p *= eps;
  }
  return f;
}

ForcingField ForcingExpansion::G2_at(double eps) const {
  ForcingField f;
  double p = 1.0;
  for (const auto& g : G2) {
    f += g * p;
    p *= eps;
  }
  return f;
}

ForcingExpansion ForcingExpansion::negated() const {
  ForcingExpansion e = *this;
  for (auto& g : e.G1) g = -g;
  for (auto& g : e.G2) g = -g;
  return e;
}

}  // namespace fch
