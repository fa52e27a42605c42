#include <cmath>

#include "doctest.h"
#include "fch/profile1d.h"
#include "fch/sharp_flow.h"

using namespace fch;

namespace {
double sup(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

ForcingLimit forced() {
  return {ForcingField::constant(0.6) + ForcingField::cosine(0.8, 1, 2) +
              ForcingField::gaussian(1.5, {0.35, 0.6}, 0.15),
          ForcingField::cosine(0.5, 2, 1) + ForcingField::gaussian(-0.7, {0.6, 0.4}, 0.2)};
}
}  // namespace

TEST_CASE("unforced circle: constant chemical potential, no motion") {
  GreenOperator G;
  Curve c = Curve::circle({0.5, 0.5}, 0.25, 128);
  ChemicalPotential mu(G, c, {});
  CHECK(mu.density().cwiseAbs().maxCoeff() < 1e-7);
  auto v = mu({{0.1, 0.1}, {0.5, 0.5}, {0.7, 0.6}, {0.95, 0.2}});
  for (double x : v) CHECK(std::abs(x - 2 * surface_tension() / 0.25) < 1e-8);
  CHECK(sup(normal_velocity(mu)) <= 1e-6);
  CHECK(mu.boundary_residual() < 1e-10);
}

TEST_CASE("integral of the density") {
  GreenOperator G;
  Curve e = Curve::ellipse({0.5, 0.5}, 0.3, 0.2, 128);
  ChemicalPotential mu(G, e, {});
  CHECK(std::abs(mu.layer().weights().dot(mu.density())) < 1e-12);
  for (double g : {1.0, -0.4, 2.5}) {
    ChemicalPotential m2(G, e, {ForcingField::constant(g), {}});
    // int [d_nu mu] = g |Omega|, so int V0 = g/2
    CHECK(m2.layer().weights().dot(m2.density()) == doctest::Approx(g).epsilon(1e-12));
    CHECK(e.integrate(normal_velocity(m2)) == doctest::Approx(g / 2).epsilon(1e-12));
  }
}

TEST_CASE("mean velocity identity") {
  GreenOperator G;
  Curve c = Curve::circle({0.5, 0.5}, 0.2, 128);
  ChemicalPotential mu(G, c, {ForcingField::constant(1.0), {}});
  auto V = normal_velocity(mu);
  CHECK(c.mean(V) == doctest::Approx(1 / (4 * M_PI * 0.2)).epsilon(1e-6));
  CHECK(std::abs(c.mean(V) - 0.3979) < 1e-4);
  // the box breaks radial symmetry but keeps the quarter-turn symmetry
  for (int j = 0; j < 128; ++j) CHECK(std::abs(V[j] - V[(j + 32) % 128]) < 1e-7);

  Curve p = Curve::perturbed_circle({0.5, 0.5}, 0.22, 0.1, 3, 128);
  ForcingLimit f = forced();
  ChemicalPotential mp(G, p, f);
  double expect = f.G10.integral() / (2 * p.arc_length());
  CHECK(std::abs(p.mean(normal_velocity(mp)) - expect) <= 5e-3 * std::abs(expect));
  // forced boundary data are matched
  CHECK(mp.boundary_residual() < 1e-10);
}

TEST_CASE("chemical potential solves the forced problem") {
  GreenOperator G;
  Curve p = Curve::perturbed_circle({0.5, 0.5}, 0.22, 0.1, 3, 128);
  ForcingLimit f = forced();
  ChemicalPotential mu(G, p, f);
  // Laplacian -G10 off the curve
  for (Vec2 q : {Vec2{0.1, 0.1}, Vec2{0.5, 0.5}, Vec2{0.85, 0.7}}) {
    double h = 0.01;
    auto v = mu({{q[0] + h, q[1]}, {q[0] - h, q[1]}, {q[0], q[1] + h}, {q[0], q[1] - h}, q,
                 {q[0] + 2 * h, q[1]}, {q[0] - 2 * h, q[1]}, {q[0], q[1] + 2 * h}, {q[0], q[1] - 2 * h}});
    double lap = (-(v[5] + v[6] + v[7] + v[8]) + 16 * (v[0] + v[1] + v[2] + v[3]) - 60 * v[4]) / (12 * h * h);
    CHECK(std::abs(lap + f.G10(q)) < 1e-5);
  }
  // zero flux through the walls, one-sided second-order difference
  for (double t : {0.2, 0.5, 0.8}) {
    double h = 1e-3;
    auto v = mu({{0, t}, {h, t}, {2 * h, t}, {1, t}, {1 - h, t}, {1 - 2 * h, t}});
    CHECK(std::abs(-3 * v[0] + 4 * v[1] - v[2]) / (2 * h) < 1e-5);
    CHECK(std::abs(-3 * v[3] + 4 * v[4] - v[5]) / (2 * h) < 1e-5);
  }
}

TEST_CASE("unforced flow: stationary circle, area conserved, length decreasing") {
  GreenOperator G;
  Curve c = Curve::circle({0.5, 0.5}, 0.25, 64);
  FlowState s = make_state(c, 0, G, {});
  double dt = stable_dt(c, 0.5);
  for (int i = 0; i < 100; ++i) s = step(s, G, {}, dt);
  CHECK(std::abs(std::sqrt(s.area / M_PI) - 0.25) <= 1e-6);
  CHECK(hausdorff(s.curve, c) <= 1e-6);

  Curve p = Curve::perturbed_circle({0.5, 0.5}, 0.25, 0.05, 3, 64);
  FlowState q = make_state(p, 0, G, {});
  double a0 = q.area, prev = q.length;
  dt = stable_dt(p, 0.5);
  for (int i = 0; i < 100; ++i) {
    q = step(q, G, {}, dt);
    CHECK(q.length < prev);
    prev = q.length;
  }
  CHECK(std::abs(q.area - a0) / a0 <= 1e-6);
}

TEST_CASE("area and length rate identities") {
  GreenOperator G;
  Curve p = Curve::perturbed_circle({0.5, 0.5}, 0.25, 0.05, 3, 64);
  FlowState s = make_state(p, 0, G, {});
  RatePair ar = area_rate_check(s, G, {});
  CHECK(std::abs(ar.lhs) < 1e-12);
  CHECK(ar.rhs == 0.0);
  double dt = stable_dt(p, 0.5);
  LengthRateReport lr = length_rate_check(s, G, {}, dt);
  CHECK(lr.fd_rate < 0);
  CHECK(lr.kv < 0);
  CHECK(std::abs(lr.fd_rate - lr.kv) <= 0.02 * std::abs(lr.kv));
  CHECK(std::abs(lr.split - lr.kv) <= 1e-10 * std::abs(lr.kv));

  Curve cc = Curve::circle({0.5, 0.5}, 0.25, 64);
  LengthRateReport lc = length_rate_check(make_state(cc, 0, G, {}), G, {}, dt);
  CHECK(std::abs(lc.kv) < 1e-8);
  CHECK(std::abs(lc.fd_rate) < 1e-6);

  ForcingLimit f = forced();
  FlowState sf = make_state(p, 0, G, f);
  RatePair af = area_rate_check(sf, G, f);
  CHECK(af.rel() <= 5e-3);
  LengthRateReport lf = length_rate_check(sf, G, f, dt);
  CHECK(std::abs(lf.fd_area_rate - 0.5 * f.G10.integral()) <= 0.01 * std::abs(0.5 * f.G10.integral()));
  CHECK(std::abs(lf.fd_rate - lf.kv) <= 0.02 * std::abs(lf.kv));
  MESSAGE("mu V direct " << lf.mu_v_direct << " via gradient " << lf.mu_v_gradient);
  CHECK(std::abs(lf.mu_v_gradient - lf.mu_v_direct) <= 0.02 * std::abs(lf.mu_v_direct));

  ChemicalPotential mu(G, Curve::ellipse({0.5, 0.5}, 0.3, 0.2, 128), {ForcingField::constant(1.0), {}});
  CHECK(area_rate_check(make_state(mu.curve(), 0, G, {ForcingField::constant(1.0), {}}), G,
                        {ForcingField::constant(1.0), {}})
            .rel() <= 5e-3);
}

TEST_CASE("velocity converges under marker refinement") {
  GreenOperator G;
  ForcingLimit f = forced();
  std::vector<double> ts;
  for (int q = 0; q < 50; ++q) ts.push_back(2 * M_PI * q / 50);
  auto sample = [&](int n) {
    Curve c = Curve::perturbed_circle({0.5, 0.5}, 0.22, 0.1, 3, n);
    auto V = normal_velocity(ChemicalPotential(G, c, f));
    std::vector<double> out;
    for (double t : ts) out.push_back(c.interp(V, t));
    return out;
  };
  auto v64 = sample(64), v128 = sample(128), v256 = sample(256);
  double e1 = 0, e2 = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    e1 = std::max(e1, std::abs(v64[i] - v256[i]));
    e2 = std::max(e2, std::abs(v128[i] - v256[i]));
  }
  MESSAGE("velocity error 64: " << e1 << " 128: " << e2);
  CHECK(e2 * 4 <= e1);
}

TEST_CASE("homogeneous variant switch") {
  GreenOperator G;
  Curve p = Curve::perturbed_circle({0.5, 0.5}, 0.25, 0.05, 3, 64);
  SharpFlowOptions o;
  o.ms2a = true;
  auto v = normal_velocity(ChemicalPotential(G, p, {}));
  auto w = normal_velocity(ChemicalPotential(G, p, {}, o));
  for (size_t i = 0; i < v.size(); ++i) CHECK(std::abs(w[i] - 0.5 * v[i]) < 1e-9);
}
