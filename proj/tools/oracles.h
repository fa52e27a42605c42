#pragma once

#include <functional>
#include <vector>

#include "fch/geometry.h"

namespace oracle {

// Neumann Green function of the unit square as a cosine series in y with the
// one-dimensional x Green functions in closed form. Needs |x - x'| > 0.
double green_series(fch::Vec2 xi, fch::Vec2 eta);

// Laplacian by Romberg extrapolation of the five-point stencil.
double laplacian(const std::function<double(double, double)>& f, double x, double y, double h0 = 0.04);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Integral over [0,1]^2 of log|xi - eta| d eta, closed form.
double log_integral_unit_square(fch::Vec2 xi);

// Harmonic function outside a disk inside the unit square, Neumann on the walls,
// u = cos(k theta) on the circle. Ghost-fluid finite differences on an n x n grid.
// Returns du/dr on the circle at the requested angles.
struct ExteriorSolve {
  std::vector<double> theta, dudr;
};
ExteriorSolve exterior_dirichlet_fd(fch::Vec2 center, double R, int k, int n, int n_angles);

}  // namespace oracle
