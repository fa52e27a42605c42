#pragma once

#include <ostream>
#include <vector>

#include "fch/field.h"
#include "fch/forcing.h"
#include "fch/geometry.h"

namespace fch {

struct CHConfig {
  double eps = 0.04;
  double dt = 1e-5;
  int nx = 128, ny = 128;
  ForcingField G1, G2;  // already evaluated at eps
  double T = 0.0;
  int snapshot_every = 0;
  double c_stab = 2.0;
};

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// glued profile of the signed distance, +1 outside, -1 inside
ScalarField2D init_from_curve(const Curve& c, double eps, int nx, int ny, double eps0);

class CHSolver {
 public:
  explicit CHSolver(const CHConfig& cfg);
  const CHConfig& config() const { return cfg_; }
  // one stabilized semi-implicit step in cosine space
  ScalarField2D step(const ScalarField2D& m) const;
  // chemical potential -eps Lap m + f(m)/eps - G2
  ScalarField2D chemical_potential(const ScalarField2D& m) const;
  double forcing_mass_rate() const { return cfg_.G1.integral(); }

 private:
  CHConfig cfg_;
  std::vector<double> lam_, denom_;
  CosineCoeffs g1_, g2_;
};

double free_energy(const ScalarField2D& m, double eps);
double mass(const ScalarField2D& m);

// max over steps of |(mass_{n+1} - mass_n)/dt - int G1|
double mass_balance_check(const std::vector<double>& masses, double dt, double g1_integral);

// zero contour by marching squares, smoothed into a curve with the given marker count
Curve extract_interface(const ScalarField2D& m, int markers = 128);

struct CHDiagnostics {
  double t = 0.0, mass = 0.0, energy = 0.0, length = -1.0;
};
void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const CHDiagnostics& d);

}  // namespace fch
