#include "fch/field.h"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fch {

double ScalarField2D::integral() const {
  double s = 0.0;
  for (double v : data) s += v;
  return s * cell_area();
}

double ScalarField2D::mean() const { return integral(); }

double ScalarField2D::sup() const {
  double s = 0.0;
  for (double v : data) s = std::max(s, std::abs(v));
  return s;
}

double ScalarField2D::l1() const {
  double s = 0.0;
  for (double v : data) s += std::abs(v);
  return s * cell_area();
}

std::vector<Vec2> ScalarField2D::nodes() const {
  std::vector<Vec2> p(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) p[i + nx * j] = {x(i), y(j)};
  return p;
}

ScalarField2D& ScalarField2D::operator+=(const ScalarField2D& o) {
  for (size_t k = 0; k < data.size(); ++k) data[k] += o.data[k];
  return *this;
}

ScalarField2D& ScalarField2D::operator-=(const ScalarField2D& o) {
  for (size_t k = 0; k < data.size(); ++k) data[k] -= o.data[k];
  return *this;
}

ScalarField2D& ScalarField2D::operator*=(double s) {
  for (double& v : data) v *= s;
  return *this;
}

ScalarField2D operator+(ScalarField2D a, const ScalarField2D& b) { return a += b; }
ScalarField2D operator-(ScalarField2D a, const ScalarField2D& b) { return a -= b; }
ScalarField2D operator*(double s, ScalarField2D a) { return a *= s; }

namespace {

struct DctPlans {
  int nx, ny;
  double* buf;
  fftw_plan fwd, inv;
  DctPlans(int nx_, int ny_) : nx(nx_), ny(ny_) {
    buf = fftw_alloc_real(static_cast<size_t>(nx) * ny);
    fwd = fftw_plan_r2r_2d(ny, nx, buf, buf, FFTW_REDFT10, FFTW_REDFT10, FFTW_MEASURE);
    inv = fftw_plan_r2r_2d(ny, nx, buf, buf, FFTW_REDFT01, FFTW_REDFT01, FFTW_MEASURE);
  }
  ~DctPlans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buf);
  }
};

std::mutex g_plan_mtx;

DctPlans& plans_for(int nx, int ny) {
  static std::map<std::pair<int, int>, std::unique_ptr<DctPlans>> cache;
  auto key = std::make_pair(nx, ny);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto p = std::make_unique<DctPlans>(nx, ny);
  auto& ref = *p;
  cache[key] = std::move(p);
  return ref;
}

}  // namespace

CosineCoeffs dct_forward(const ScalarField2D& f) {
  std::lock_guard<std::mutex> lock(g_plan_mtx);
  DctPlans& p = plans_for(f.nx, f.ny);
  std::copy(f.data.begin(), f.data.end(), p.buf);
  fftw_execute(p.fwd);
  CosineCoeffs a{f.nx, f.ny, std::vector<double>(p.buf, p.buf + f.data.size())};
  double s = 1.0 / (static_cast<double>(f.nx) * f.ny);
  for (int l = 0; l < f.ny; ++l)
    for (int k = 0; k < f.nx; ++k) {
      double w = s * (k == 0 ? 0.5 : 1.0) * (l == 0 ? 0.5 : 1.0);
      a(k, l) *= w;
    }
  return a;
}

ScalarField2D dct_inverse(const CosineCoeffs& a) {
  std::lock_guard<std::mutex> lock(g_plan_mtx);
  DctPlans& p = plans_for(a.nx, a.ny);
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k)
      p.buf[k + a.nx * l] = a(k, l) * (k == 0 ? 1.0 : 0.5) * (l == 0 ? 1.0 : 0.5);
  fftw_execute(p.inv);
  ScalarField2D f(a.nx, a.ny);
  std::copy(p.buf, p.buf + f.data.size(), f.data.begin());
  return f;
}

static double lam(int k, int l) { return M_PI * M_PI * (double(k) * k + double(l) * l); }

ScalarField2D laplacian(const ScalarField2D& f) {
  CosineCoeffs a = dct_forward(f);
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k) a(k, l) *= -lam(k, l);
  return dct_inverse(a);
}

ScalarField2D inverse_laplacian(const ScalarField2D& f) {
  CosineCoeffs a = dct_forward(f);
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k) a(k, l) = (k == 0 && l == 0) ? 0.0 : -a(k, l) / lam(k, l);
  return dct_inverse(a);
}

double gradient_dot_integral(const ScalarField2D& f, const ScalarField2D& g) {
  CosineCoeffs a = dct_forward(f), b = dct_forward(g);
  double s = 0.0;
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k) {
      double w = (k == 0 ? 1.0 : 0.5) * (l == 0 ? 1.0 : 0.5);
      s += lam(k, l) * a(k, l) * b(k, l) * w;
    }
  return s;
}

double gradient_sq_integral(const ScalarField2D& f) { return gradient_dot_integral(f, f); }

double max_boundary_normal_derivative(const ScalarField2D& f) {
  CosineCoeffs a = dct_forward(f);
  double m = 0.0;
  for (int s = 0; s < 4; ++s) {
    const int n = (s < 2) ? f.ny : f.nx;
    for (int q = 0; q < n; ++q) {
      double t = (q + 0.5) / n;
      double x = (s == 0) ? 0.0 : (s == 1 ? 1.0 : t);
      double y = (s < 2) ? t : (s == 2 ? 0.0 : 1.0);
      double d = (s < 2) ? eval_spectral_dx(a, x, y) : eval_spectral_dy(a, x, y);
      m = std::max(m, std::abs(d));
    }
  }
  return m;
}

namespace {
double eval_generic(const CosineCoeffs& a, double x, double y, int dx, int dy) {
  std::vector<double> cx(a.nx), cy(a.ny);
  for (int k = 0; k < a.nx; ++k)
    cx[k] = dx ? -k * M_PI * std::sin(k * M_PI * x) : std::cos(k * M_PI * x);
  for (int l = 0; l < a.ny; ++l)
    cy[l] = dy ? -l * M_PI * std::sin(l * M_PI * y) : std::cos(l * M_PI * y);
  double s = 0.0;
  for (int l = 0; l < a.ny; ++l) {
    double r = 0.0;
    const double* row = &a.c[static_cast<size_t>(a.nx) * l];
    for (int k = 0; k < a.nx; ++k) r += row[k] * cx[k];
    s += r * cy[l];
  }
  return s;
}

int reflect(int i, int n) {
  if (i < 0) return -1 - i;
  if (i >= n) return 2 * n - 1 - i;
  return i;
}

void cubic_weights(double x, double w[4]) {
  w[0] = -x * (x - 1) * (x - 2) / 6;
  w[1] = (x + 1) * (x - 1) * (x - 2) / 2;
  w[2] = -(x + 1) * x * (x - 2) / 2;
  w[3] = (x + 1) * x * (x - 1) / 6;
}
}  // namespace

double eval_spectral(const CosineCoeffs& a, double x, double y) { return eval_generic(a, x, y, 0, 0); }
double eval_spectral_dx(const CosineCoeffs& a, double x, double y) { return eval_generic(a, x, y, 1, 0); }
double eval_spectral_dy(const CosineCoeffs& a, double x, double y) { return eval_generic(a, x, y, 0, 1); }

double interp_bicubic(const ScalarField2D& f, double x, double y) {
  double tx = x * f.nx - 0.5, ty = y * f.ny - 0.5;
  int i = static_cast<int>(std::floor(tx)), j = static_cast<int>(std::floor(ty));
  double wx[4], wy[4];
  cubic_weights(tx - i, wx);
  cubic_weights(ty - j, wy);
  double s = 0.0;
  for (int b = 0; b < 4; ++b) {
    int jj = reflect(j - 1 + b, f.ny);
    double r = 0.0;
    for (int a = 0; a < 4; ++a) r += wx[a] * f(reflect(i - 1 + a, f.nx), jj);
    s += wy[b] * r;
  }
  return s;
}

}  // namespace fch
