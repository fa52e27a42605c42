#pragma once

#include <functional>
#include <vector>

namespace fch {

// Samples on the uniform symmetric grid z_i = -z_max + i*h, i = 0..n-1, n odd.
struct Profile1D {
  double z_max = 10.0;
  int n = 2001;
  std::vector<double> v;

  Profile1D() = default;
  Profile1D(double z_max, int n);
  static Profile1D sample(const std::function<double(double)>& fn, double z_max, int n);

  double h() const { return 2.0 * z_max / (n - 1); }
  double z(int i) const { return -z_max + i * h(); }
  int center() const { return n / 2; }
  // cubic interpolation, zero outside [-z_max, z_max]
  double eval(double zz) const;
  double eval_d1(double zz) const;
};

double profile(double z);     // tanh(z/sqrt2)
double profile_d1(double z);
double profile_d2(double z);
double profile_d3(double z);

double fprime(double m);      // f'(m) = 3m^2 - 1, f = m^3 - m

double profile_ode_residual(const Profile1D& p);

double cutoff(double u);
double cutoff_d1(double u);

double glued_profile(double z, double eps, double eps0);
double glued_profile_d1(double z, double eps, double eps0);

// trapezoid rule on the profile grid
double integrate(const Profile1D& p);
double surface_tension();
double surface_tension(double z_max, int n);

Profile1D apply_L(const Profile1D& w);

struct SolvabilityReport {
  double defect = 0.0;
  double alpha = 0.0;
  Profile1D solution;
  bool tails_decay = true;  // |A(+-z_max)| small relative to max|A|
};

SolvabilityReport solve_L(const Profile1D& A);

}  // namespace fch
