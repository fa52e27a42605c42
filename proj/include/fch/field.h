#pragma once

#include <vector>

#include "fch/geometry.h"

namespace fch {

// Cell-centered field on the unit square, x_i = (i + 1/2)/nx. Index i + nx*j.
struct ScalarField2D {
  int nx = 0, ny = 0;
  std::vector<double> data;

  ScalarField2D() = default;
  ScalarField2D(int nx, int ny, double value = 0.0) : nx(nx), ny(ny), data(nx * ny, value) {}

  double& operator()(int i, int j) { return data[i + nx * j]; }
  double operator()(int i, int j) const { return data[i + nx * j]; }
  double x(int i) const { return (i + 0.5) / nx; }
  double y(int j) const { return (j + 0.5) / ny; }
  double cell_area() const { return 1.0 / (static_cast<double>(nx) * ny); }
  double integral() const;
  double mean() const;
  double sup() const;
  double l1() const;
  std::vector<Vec2> nodes() const;

  template <class F>
  static ScalarField2D from_function(int nx, int ny, F&& f) {
    ScalarField2D g(nx, ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) g(i, j) = f(g.x(i), g.y(j));
    return g;
  }

  ScalarField2D& operator+=(const ScalarField2D& o);
  ScalarField2D& operator-=(const ScalarField2D& o);
  ScalarField2D& operator*=(double s);
};

ScalarField2D operator+(ScalarField2D a, const ScalarField2D& b);
ScalarField2D operator-(ScalarField2D a, const ScalarField2D& b);
ScalarField2D operator*(double s, ScalarField2D a);

// Cosine coefficients a_kl with f(x,y) = sum a_kl cos(k pi x) cos(l pi y).
struct CosineCoeffs {
  int nx = 0, ny = 0;
  std::vector<double> c;
  double operator()(int k, int l) const { return c[k + nx * l]; }
  double& operator()(int k, int l) { return c[k + nx * l]; }
};

CosineCoeffs dct_forward(const ScalarField2D& f);
ScalarField2D dct_inverse(const CosineCoeffs& a);

ScalarField2D laplacian(const ScalarField2D& f);
// v with Laplacian f - mean(f), zero mean, Neumann; equals integral of G(., eta) f(eta)
ScalarField2D inverse_laplacian(const ScalarField2D& f);
// Parseval forms
double gradient_sq_integral(const ScalarField2D& f);
double gradient_dot_integral(const ScalarField2D& f, const ScalarField2D& g);
// normal derivative on the four sides from the cosine series, largest magnitude
double max_boundary_normal_derivative(const ScalarField2D& f);

// spectral point evaluation (exact for the cosine interpolant)
double eval_spectral(const CosineCoeffs& a, double x, double y);
double eval_spectral_dx(const CosineCoeffs& a, double x, double y);
double eval_spectral_dy(const CosineCoeffs& a, double x, double y);
// bicubic on the cell-centered grid with even reflection at the walls
double interp_bicubic(const ScalarField2D& f, double x, double y);

}  // namespace fch
