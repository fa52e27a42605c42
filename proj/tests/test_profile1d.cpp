#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fch/profile1d.h"

using namespace fch;

namespace {

// adaptive Simpson, independent of the trapezoid rule used by the library
double simpson(const std::function<double(double)>& f, double a, double b, double eps, int depth,
               double fa, double fm, double fb, double whole) {
  double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, eps / 2, depth - 1, fa, flm, fm, left) +
         simpson(f, m, b, eps / 2, depth - 1, fm, frm, fb, right);
}

double adaptive(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, 1e-14, 50, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb));
}

double sup_interior(const Profile1D& p, int skip = 1) {
  double s = 0;
  for (int i = skip; i + skip < p.n; ++i) s = std::max(s, std::abs(p.v[i]));
  return s;
}

// sum of Gaussians times polynomials, decaying within |z| < 6
Profile1D random_smooth(std::mt19937& rng, double z_max, int n, bool even) {
  std::uniform_real_distribution<double> U(-1.0, 1.0), W(0.5, 2.0), C(-2.0, 2.0);
  double c[4], w[4], x0[4];
  for (int k = 0; k < 4; ++k) {
    c[k] = U(rng);
    w[k] = W(rng);
    x0[k] = even ? 0.0 : C(rng);
  }
  return Profile1D::sample(
      [&](double z) {
        double s = 0;
        for (int k = 0; k < 4; ++k) {
          double zz = even ? z * z : (z - x0[k]) * (z - x0[k]);
          s += c[k] * (1 + (even ? zz : (z - x0[k]))) * std::exp(-zz / w[k]);
        }
        return s;
      },
      z_max, n);
}

}  // namespace

TEST_CASE("profile values") {
  CHECK(profile(0.0) == 0.0);
  CHECK(profile(40.0) == doctest::Approx(1.0));
  CHECK(profile(-40.0) == doctest::Approx(-1.0));
  CHECK(profile(std::sqrt(2.0) * std::atanh(0.5)) == doctest::Approx(0.5).epsilon(1e-14));
  for (double z = -5; z < 5; z += 0.37) {
    CHECK(profile(-z) == doctest::Approx(-profile(z)));
    CHECK(profile(z + 0.01) > profile(z));
  }
}

TEST_CASE("profile ode residual is second order") {
  Profile1D p1 = Profile1D::sample(profile, 10.0, 2001);  // h = 0.01
  Profile1D p2 = Profile1D::sample(profile, 10.0, 4001);
  double r1 = profile_ode_residual(p1), r2 = profile_ode_residual(p2);
  CHECK(r1 <= 1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(profile_ode_residual(Profile1D::sample([](double) { return 1.0; }, 10, 101)) == 0.0);
  CHECK(profile_ode_residual(Profile1D::sample([](double) { return 0.0; }, 10, 101)) == 0.0);
}

TEST_CASE("cutoff") {
  CHECK(cutoff(0.25) == 1.0);
  CHECK(cutoff(0.5) == 1.0);
  CHECK(cutoff(1.5) == 0.0);
  CHECK(cutoff(1.0) == 0.0);
  CHECK(cutoff(0.75) == cutoff(-0.75));
  double prev = 1.0;
  for (double u = 0.5; u <= 1.0; u += 0.01) {
    CHECK(cutoff(u) <= prev + 1e-15);
    prev = cutoff(u);
  }
  // derivative matches finite differences
  for (double u = 0.55; u < 0.99; u += 0.05)
    CHECK(cutoff_d1(u) == doctest::Approx((cutoff(u + 1e-6) - cutoff(u - 1e-6)) / 2e-6).epsilon(1e-5));
}

TEST_CASE("glued profile") {
  CHECK(glued_profile(0.0, 0.1, 0.5) == 0.0);
  CHECK(glued_profile(2 * 0.5 / 0.1, 0.1, 0.5) == 1.0);
  CHECK(glued_profile(-2 * 0.5 / 0.1, 0.1, 0.5) == -1.0);
  double z = 0.5 / (4 * 0.1);
  CHECK(glued_profile(z, 0.1, 0.5) == profile(z));
  CHECK_THROWS_AS(glued_profile(0.0, 0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(glued_profile(0.0, 0.6, 0.5), std::domain_error);
  for (double zz = -12; zz < 12; zz += 0.13) {
    double eps = 0.1, eps0 = 0.5;
    if (std::abs(zz) <= eps0 / (2 * eps)) CHECK(glued_profile(zz, eps, eps0) == profile(zz));
    if (std::abs(zz) >= eps0 / eps) CHECK(std::abs(glued_profile(zz, eps, eps0)) == 1.0);
    double fd = (glued_profile(zz + 1e-6, eps, eps0) - glued_profile(zz - 1e-6, eps, eps0)) / 2e-6;
    CHECK(glued_profile_d1(zz, eps, eps0) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("surface tension") {
  double exact = std::sqrt(2.0) / 6.0;  // 0.2357022603955158
  double oracle = 0.25 * adaptive([](double z) { double d = profile_d1(z); return d * d; }, -30, 30);
  CHECK(std::abs(oracle - exact) < 1e-12);
  CHECK(std::abs(surface_tension() - 0.2357023) < 1e-6);
  CHECK(std::abs(surface_tension() - oracle) < 1e-9);
  CHECK(std::abs(surface_tension(16.0, 3201) - surface_tension(8.0, 1601)) < 1e-9);
  CHECK(std::abs(surface_tension(10.0, 4001) - surface_tension(10.0, 2001)) < 1e-8);
  CHECK(std::abs(surface_tension(12.0, 2401) - surface_tension(8.0, 1601)) < 1e-8);
}

TEST_CASE("apply_L kernel and identities") {
  Profile1D k1 = Profile1D::sample(profile_d1, 10.0, 2001);
  Profile1D k2 = Profile1D::sample(profile_d1, 10.0, 4001);
  double e1 = sup_interior(apply_L(k1)), e2 = sup_interior(apply_L(k2));
  CHECK(e1 <= 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(sup_interior(apply_L(Profile1D(10.0, 2001)), 0) == 0.0);
  Profile1D d2 = Profile1D::sample(profile_d2, 10.0, 2001);
  Profile1D Ld2 = apply_L(d2);
  double err = 0;
  for (int i = 1; i + 1 < d2.n; ++i) {
    double z = d2.z(i), m = profile(z), mp = profile_d1(z);
    err = std::max(err, std::abs(Ld2.v[i] + 6 * m * mp * mp));
  }
  CHECK(err <= 1e-3);
}

TEST_CASE("solve_L examples") {
  Profile1D A = Profile1D::sample(
      [](double z) { double m = profile(z), mp = profile_d1(z); return -6 * m * mp * mp; }, 10.0, 2001);
  SolvabilityReport r = solve_L(A);
  CHECK(std::abs(r.alpha) < 1e-12);
  double err = 0;
  for (int i = 0; i < A.n; ++i) err = std::max(err, std::abs(r.solution.v[i] - profile_d2(A.z(i))));
  CHECK(err <= 1e-4);
  CHECK(r.solution.v[A.center()] == 0.0);

  SolvabilityReport r2 = solve_L(Profile1D::sample(profile_d1, 10.0, 2001));
  CHECK(r2.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sup_interior(r2.solution, 0) < 1e-10);

  SolvabilityReport r3 = solve_L(Profile1D(10.0, 2001));
  CHECK(r3.alpha == 0.0);
  CHECK(sup_interior(r3.solution, 0) == 0.0);
}

TEST_CASE("solve_L Fredholm property on random decaying data") {
  // the residual of the discrete solve against the continuous operator is O(h^2)
  auto fredholm_err = [](const Profile1D& A) {
    SolvabilityReport r = solve_L(A);
    Profile1D LA = apply_L(r.solution);
    double err = 0;
    for (int i = 1; i + 1 < A.n; ++i)
      err = std::max(err, std::abs(LA.v[i] - (A.v[i] - r.alpha * profile_d1(A.z(i)))));
    return err;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::mt19937 rng(12345 + trial);
    Profile1D A = random_smooth(rng, 10.0, 2001, trial % 2 == 0);
    std::mt19937 rng2(12345 + trial);
    Profile1D A2 = random_smooth(rng2, 10.0, 4001, trial % 2 == 0);
    SolvabilityReport r = solve_L(A);
    CHECK(r.tails_decay);
    double amax = 0;
    for (double a : A.v) amax = std::max(amax, std::abs(a));
    double e1 = fredholm_err(A), e2 = fredholm_err(A2);
    MESSAGE("fredholm residual " << e1 << " -> " << e2);
    CHECK(e1 <= 1e-4 * std::max(1.0, amax));
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(r.solution.v[A.center()] == 0.0);
    // corrected right-hand side is orthogonal to the kernel
    Profile1D g = A;
    for (int i = 0; i < A.n; ++i) g.v[i] = (A.v[i] - r.alpha * profile_d1(A.z(i))) * profile_d1(A.z(i));
    CHECK(std::abs(integrate(g)) < 1e-12);
  }
}

TEST_CASE("solve_L preserves parity") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    Profile1D A = random_smooth(rng, 10.0, 2001, true);
    Profile1D w = solve_L(A).solution;
    double asym = 0;
    for (int i = 0; i < A.n; ++i) asym = std::max(asym, std::abs(w.v[i] - w.v[A.n - 1 - i]));
    CHECK(asym <= 1e-10);
  }
}
