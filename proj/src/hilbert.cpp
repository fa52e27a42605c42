#include "fch/hilbert.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace fch {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// 1 - f'(mbar)/f'(1)
double one_minus(double z) { return 1.0 - 0.5 * fprime(profile(z)); }

// periodic 4-point Lagrange weights in the marker index
void marker_stencil(int N, double t, int idx[4], double w[4]) {
  double u = t / kTwoPi * N;
  u -= N * std::floor(u / N);
  int j = static_cast<int>(std::floor(u));
  double s = u - j;
  for (int q = 0; q < 4; ++q) idx[q] = ((j - 1 + q) % N + N) % N;
  w[0] = -s * (s - 1) * (s - 2) / 6.0;
  w[1] = (s + 1) * (s - 1) * (s - 2) / 2.0;
  w[2] = -(s + 1) * s * (s - 2) / 2.0;
  w[3] = (s + 1) * s * (s - 1) / 6.0;
}

double field_at(const ScalarField2D& f, Vec2 p) { return interp_bicubic(f, p[0], p[1]); }

// point at inside-positive distance rho from marker j, rho clamped to the tube
Vec2 along_normal(const Curve& c, const std::vector<Vec2>& nu, int j, double rho, double eps0) {
  double r = std::clamp(rho, -eps0, eps0);
  const Vec2& p = c.points()[j];
  return {p[0] - r * nu[j][0], p[1] - r * nu[j][1]};
}

ScalarField2D add(const ScalarField2D& a, const ScalarField2D& b, double sb) {
  ScalarField2D o = a;
  for (size_t i = 0; i < o.data.size(); ++i) o.data[i] += sb * b.data[i];
  return o;
}

void check_tube(const Curve& c, double eps0) {
  if (eps0 >= c.boundary_margin()) throw ExpansionError("tube width eps0 reaches the walls");
  if (eps0 * c.max_curvature() >= 1.0) throw ExpansionError("tube width eps0 exceeds 1/k(Gamma)");
}
}  // namespace

double c0_eps(double eps, double eps0) {
  if (!(eps > 0.0) || !(eps <= eps0)) throw std::domain_error("c0_eps: need 0 < eps <= eps0");
  double e = std::exp(-eps0 / eps);
  return e / (1.0 - e);
}

double mean_velocity_j(int j, const Curve& c, double int_G1j, double b_j, double eps, double eps0,
                       bool use_c0) {
  if (j == 0 && b_j != 0.0) throw std::invalid_argument("mean_velocity_j: b_0 must vanish");
  double factor = use_c0 ? 1.0 + c0_eps(eps, eps0) : 1.0;
  return factor * (int_G1j - b_j) / (2.0 * c.arc_length());
}

std::vector<double> VelocityZero::total(double factor) const {
  std::vector<double> v = to_std(orth);
  for (double& x : v) x += factor * mean;
  return v;
}

VelocityZero v0_orthogonal(const LayerPotential& lp, const ForcingLimit& f) {
  const Curve& c = lp.curve();
  const int N = c.size();
  const double S = surface_tension(), L = c.arc_length();
  const auto& P = c.points();
  const Eigen::VectorXd& w = lp.weights();
  Eigen::VectorXd K = Eigen::Map<const Eigen::VectorXd>(c.curvatures().data(), N);

  VelocityZero r;
  r.mean = f.G10.integral() / (2.0 * L);
  // -int G G10 from the cosine coefficients
  const CosineCoeffs& a = f.G10.coeffs();
  CosineCoeffs vol = a;
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k) {
      double lam = M_PI * M_PI * (double(k) * k + double(l) * l);
      vol(k, l) = (k == 0 && l == 0) ? 0.0 : a(k, l) / lam;
    }
  Eigen::VectorXd layer1 = lp.on_curve(Eigen::VectorXd::Ones(N));
  r.mu_tilde.resize(N);
  r.B.resize(N);
  for (int j = 0; j < N; ++j) {
    r.mu_tilde[j] = 2.0 * r.mean * layer1[j] + eval_spectral(vol, P[j][0], P[j][1]);
    r.B[j] = -2.0 * (r.mu_tilde[j] + f.G20(P[j]));
  }
  double Km = lp.gamma_mean(K), Bm = lp.gamma_mean(r.B);
  Eigen::VectorXd data(N);
  for (int j = 0; j < N; ++j) data[j] = S * (K[j] - Km) + 0.25 * (r.B[j] - Bm);
  r.orth = lp.T(data);
  Eigen::VectorXd so = lp.on_curve(r.orth);
  r.c = (4.0 * S * w.dot(K) + w.dot(r.B) - 4.0 * w.dot(so)) / (2.0 * L);
  r.dirichlet_residual = 0.0;
  for (int j = 0; j < N; ++j) {
    double mu = 2.0 * so[j] + r.c + r.mu_tilde[j];
    r.dirichlet_residual = std::max(r.dirichlet_residual, std::abs(mu - (2 * S * K[j] - f.G20(P[j]))));
  }
  return r;
}

TubeGrid tube_grid(const Curve& c, int nx, int ny, double eps0) {
  TubeGrid g;
  g.nx = nx;
  g.ny = ny;
  g.eps0 = eps0;
  ScalarField2D tmp(nx, ny);
  auto pts = tmp.nodes();
  auto tc = signed_distance_many(c, pts, eps0, eps0);
  g.rho.resize(pts.size());
  g.t.resize(pts.size());
  g.in_tube.resize(pts.size());
  for (size_t k = 0; k < pts.size(); ++k) {
    g.rho[k] = -tc[k].d;
    g.t[k] = tc[k].s;
    g.in_tube[k] = tc[k].valid && std::abs(tc[k].d) < eps0;
  }
  return g;
}

std::vector<double> OrderData::velocity() const {
  std::vector<double> v = to_std(v_orth);
  for (double& x : v) x += mean_v;
  return v;
}

ScalarField2D tube_source(const ExpansionState& s, const std::vector<double>& v) {
  const double eps = s.opt.eps, eps0 = s.opt.eps0;
  TrigSeries vs = TrigSeries::from_samples(v);
  ScalarField2D out(s.tube.nx, s.tube.ny);
  for (size_t k = 0; k < out.data.size(); ++k)
    if (s.tube.in_tube[k]) out.data[k] = glued_profile_d1(s.tube.rho[k] / eps, eps, eps0) * vs.eval(s.tube.t[k]) / eps;
  return out;
}

double h_at(const ExpansionState& s, int j, double z, double t) {
  const auto& H = s.orders.at(j - 1).h;
  if (H.empty()) return 0.0;
  int idx[4];
  double w[4];
  marker_stencil(static_cast<int>(H.size()), t, idx, w);
  double v = 0.0;
  for (int q = 0; q < 4; ++q) v += w[q] * H[idx[q]].eval(z);
  return v;
}

namespace {
double h_d1_at(const ExpansionState& s, int j, double z, double t) {
  const auto& H = s.orders.at(j - 1).h;
  if (H.empty()) return 0.0;
  int idx[4];
  double w[4];
  marker_stencil(static_cast<int>(H.size()), t, idx, w);
  double v = 0.0;
  for (int q = 0; q < 4; ++q) v += w[q] * H[idx[q]].eval_d1(z);
  return v;
}

// d/dz of h_j(z) r(eps z/eps0)
double windowed_h_d1(const ExpansionState& s, int j, double z, double t) {
  const double u = s.opt.eps * z / s.opt.eps0;
  return h_d1_at(s, j, z, t) * cutoff(u) + h_at(s, j, z, t) * cutoff_d1(u) * s.opt.eps / s.opt.eps0;
}

Eigen::VectorXd sample_markers(const ScalarField2D& f, const Curve& c) {
  CosineCoeffs a = dct_forward(f);
  Eigen::VectorXd out(c.size());
  for (int j = 0; j < c.size(); ++j) out[j] = eval_spectral(a, c.points()[j][0], c.points()[j][1]);
  return out;
}
}  // namespace

ExpansionState start_expansion(const GreenOperator& op, const Curve& c, const ForcingExpansion& f,
                               const HilbertOptions& opt) {
  check_tube(c, opt.eps0);
  ExpansionState s;
  s.opt = opt;
  s.curve = c;
  s.tube = tube_grid(c, opt.nx, opt.ny, opt.eps0);
  s.K = Eigen::Map<const Eigen::VectorXd>(c.curvatures().data(), c.size());

  LayerPotential lp(op, c);
  VelocityZero v = v0_orthogonal(lp, limit_of(f));
  OrderData o;
  double factor = opt.use_c0 ? 1.0 + c0_eps(opt.eps, opt.eps0) : 1.0;
  o.mean_v = factor * v.mean;
  o.v_orth = v.orth;
  o.B = v.B;
  o.c = v.c;
  std::vector<double> V = o.velocity();

  ScalarField2D src = tube_source(s, V);
  // tube quadrature against 2 int_Gamma V
  double line = 2.0 * c.integrate(V), area = src.integral();
  o.compat = std::abs(area - line) / std::max(1.0, std::abs(line));
  if (o.compat > opt.tol)
    throw ExpansionError("order 0: tube source integral " + std::to_string(area) + " vs 2 int V0 " +
                         std::to_string(line) + ", refine the grid");
  ScalarField2D F = add(src, f.g1(0).sample(opt.nx, opt.ny), -1.0);
  o.mu = volume_potential(op, F);
  for (double& x : o.mu.data) x += o.c;
  o.lap_mu = laplacian(o.mu);
  s.orders.push_back(std::move(o));
  s.built = 1;
  return s;
}

void h1_and_phi1(ExpansionState& s, const ForcingExpansion& f) {
  OrderData& o = s.orders.at(0);
  const HilbertOptions& opt = s.opt;
  const Curve& c = s.curve;
  const int N = c.size();
  ScalarField2D G20 = f.g2(0).sample(opt.nx, opt.ny);
  o.phi = add(o.mu, G20, 1.0);
  o.phi *= 0.5;

  Eigen::VectorXd mu0 = sample_markers(o.mu, c);
  o.h.assign(N, Profile1D(opt.z_max, opt.nz));
  o.alpha.resize(N);
  o.h_even_defect = o.h_tail = 0.0;
  for (int j = 0; j < N; ++j) {
    double a = mu0[j] + f.g2(0)(c.points()[j]);
    Profile1D A = Profile1D::sample([&](double z) { return a * one_minus(z) - s.K[j] * profile_d1(z); },
                                    opt.z_max, opt.nz);
    SolvabilityReport rep = solve_L(A);
    o.alpha[j] = -rep.defect / opt.eps;
    o.h[j] = std::move(rep.solution);
    const auto& hv = o.h[j].v;
    for (int i = 0; i < opt.nz; ++i) o.h_even_defect = std::max(o.h_even_defect, std::abs(hv[i] - hv[opt.nz - 1 - i]));
    o.h_tail = std::max(o.h_tail, std::max(std::abs(hv.front()), std::abs(hv.back())));
  }
}

double b1_tube(const ExpansionState& s) {
  const OrderData& o = s.orders.at(0);
  const Curve& c = s.curve;
  const double eps = s.opt.eps, eps0 = s.opt.eps0;
  std::vector<double> V = o.velocity();
  const Profile1D grid(s.opt.z_max, s.opt.nz);
  const double zt = std::min(s.opt.z_max, eps0 / eps), dz = grid.h();
  std::vector<double> inner(c.size());
  for (int j = 0; j < c.size(); ++j) {
    double t = c.param(j), acc = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      double z = grid.z(i);
      if (std::abs(z) > zt) continue;
      double wq = (i == 0 || i == grid.n - 1) ? 0.5 : 1.0;
      acc += wq * dz * windowed_h_d1(s, 1, z, t) * (1.0 - eps * z * s.K[j]);
    }
    inner[j] = acc * V[j];
  }
  return c.integrate(inner);
}

double b1_grid(const ExpansionState& s) {
  const OrderData& o = s.orders.at(0);
  const double eps = s.opt.eps;
  TrigSeries vs = TrigSeries::from_samples(o.velocity());
  double acc = 0.0;
  for (size_t k = 0; k < s.tube.rho.size(); ++k)
    if (s.tube.in_tube[k]) acc += windowed_h_d1(s, 1, s.tube.rho[k] / eps, s.tube.t[k]) * vs.eval(s.tube.t[k]) / eps;
  return acc / (static_cast<double>(s.tube.nx) * s.tube.ny);
}

void order2_velocity(ExpansionState& s, const GreenOperator& op, const ForcingExpansion& f) {
  if (s.built < 1 || s.orders[0].h.empty()) throw ExpansionError("order2_velocity: order 1 not built");
  const HilbertOptions& opt = s.opt;
  const double eps = opt.eps, eps0 = opt.eps0;
  const Curve& c = s.curve;
  const int N = c.size();
  const auto nu = c.normals();
  LayerPotential lp(op, c);
  const Eigen::VectorXd& w = lp.weights();
  const OrderData& o0 = s.orders[0];
  std::vector<double> V0 = o0.velocity();
  TrigSeries v0s = TrigSeries::from_samples(V0);

  OrderData o;
  o.b = b1_tube(s);
  o.mean_v = mean_velocity_j(1, c, f.g1(1).integral(), o.b, eps, eps0, opt.use_c0);

  // mu~1 = int G [D_{V0} m1 + <V1> (1/eps) m0' - G11]
  ScalarField2D Ft(opt.nx, opt.ny);
  for (size_t k = 0; k < Ft.data.size(); ++k)
    if (s.tube.in_tube[k]) {
      double z = s.tube.rho[k] / eps, t = s.tube.t[k];
      Ft.data[k] = (windowed_h_d1(s, 1, z, t) * v0s.eval(t) + o.mean_v * glued_profile_d1(z, eps, eps0)) / eps;
    }
  double src_int = Ft.integral();
  Ft = add(Ft, f.g1(1).sample(opt.nx, opt.ny), -1.0);
  ScalarField2D mut = volume_potential(op, Ft);

  ScalarField2D G21 = f.g2(1).sample(opt.nx, opt.ny);
  ScalarField2D lap_phi1 = laplacian(o0.phi);

  const Profile1D grid(opt.z_max, opt.nz);
  const int nz = grid.n;
  const double dz = grid.h();
  // A2 per marker, split into named terms for the decay check
  const char* names[5] = {"forcing and eps Lap phi1", "f2", "curvature squared", "curvature times h1'",
                          "alpha1"};
  std::vector<std::vector<double>> A2(N, std::vector<double>(nz));
  o.B.resize(N);
  double tail_worst = 0.0;
  int tail_term = -1;
  for (int j = 0; j < N; ++j) {
    const double K = s.K[j];
    double tails[5] = {0, 0, 0, 0, 0}, amax = 0.0, bsum = 0.0;
    for (int i = 0; i < nz; ++i) {
      double z = grid.z(i), mb = profile(z), mp = profile_d1(z), q = one_minus(z);
      Vec2 p = along_normal(c, nu, j, eps * z, eps0);
      double phi = field_at(o0.phi, p), lphi = field_at(lap_phi1, p), g21 = field_at(G21, p);
      double h1 = o0.h[j].eval(z), h1p = o0.h[j].eval_d1(z);
      double term[5] = {(g21 + eps * lphi) * q, -3.0 * mb * (h1 * h1 + 2.0 * phi * h1) - 3.0 * mb * phi * phi * q,
                        -K * K * z * mp, -K * h1p, -o0.alpha[j] * mp};
      double a = 0.0;
      for (int q5 = 0; q5 < 5; ++q5) a += term[q5];
      A2[j][i] = a;
      amax = std::max(amax, std::abs(a));
      if (i == 0 || i == nz - 1)
        for (int q5 = 0; q5 < 5; ++q5) tails[q5] = std::max(tails[q5], std::abs(term[q5]));
      double wq = (i == 0 || i == nz - 1) ? 0.5 : 1.0;
      bsum += wq * dz * (a + field_at(mut, p) * q) * mp;
    }
    o.B[j] = -bsum;
    for (int q5 = 0; q5 < 5; ++q5)
      if (amax > 0 && tails[q5] / amax > tail_worst) {
        tail_worst = tails[q5] / amax;
        tail_term = q5;
      }
  }
  if (tail_worst > 1e-4)
    throw ExpansionError(std::string("order 2: A2 does not decay, offending term: ") + names[tail_term]);

  double Bm = lp.gamma_mean(o.B);
  Eigen::VectorXd data(N);
  for (int j = 0; j < N; ++j) data[j] = 0.25 * (o.B[j] - Bm);
  o.v_orth = lp.T(data);
  o.c = (0.5 * w.dot(o.B) - 2.0 * w.dot(lp.on_curve(o.v_orth))) / c.arc_length();

  ScalarField2D src0 = tube_source(s, to_std(o.v_orth));
  src_int += src0.integral();
  o.compat = std::abs(src_int - f.g1(1).integral()) / std::max(1.0, std::abs(f.g1(1).integral()));
  o.mu = volume_potential(op, src0);
  for (size_t k = 0; k < o.mu.data.size(); ++k) o.mu.data[k] += o.c + mut.data[k];
  o.lap_mu = laplacian(o.mu);

  // h2 and alpha2 with mu1 along the normal
  o.h.assign(N, Profile1D(opt.z_max, opt.nz));
  o.alpha.resize(N);
  for (int j = 0; j < N; ++j) {
    Profile1D A(opt.z_max, opt.nz);
    for (int i = 0; i < nz; ++i) {
      double z = grid.z(i);
      A.v[i] = field_at(o.mu, along_normal(c, nu, j, eps * z, eps0)) * one_minus(z) + A2[j][i];
    }
    SolvabilityReport rep = solve_L(A);
    o.alpha[j] = -rep.defect / eps;
    const auto& hv = rep.solution.v;
    o.h_tail = std::max(o.h_tail, std::max(std::abs(hv.front()), std::abs(hv.back())));
    o.h[j] = std::move(rep.solution);
  }

  // phi2 = [mu1 - f''(m0) phi1^2 / 2 + eps Lap phi1 + G21] / f'(1), with m0 in place of +-1
  o.phi = ScalarField2D(opt.nx, opt.ny);
  for (size_t k = 0; k < o.phi.data.size(); ++k) {
    double m0 = glued_profile(s.tube.rho[k] / eps, eps, eps0), p1 = o0.phi.data[k];
    o.phi.data[k] = 0.5 * (o.mu.data[k] - 3.0 * m0 * p1 * p1 + eps * lap_phi1.data[k] + G21.data[k]);
  }
  if (s.orders.size() < 2) s.orders.push_back(std::move(o));
  else s.orders[1] = std::move(o);
  s.built = 2;
}

ExpansionState build_expansion(const GreenOperator& op, const Curve& c, const ForcingExpansion& f,
                               const HilbertOptions& opt, int N) {
  if (N < 1 || N > 2) throw std::invalid_argument("build_expansion: N must be 1 or 2");
  ExpansionState s = start_expansion(op, c, f, opt);
  h1_and_phi1(s, f);
  if (N >= 2) order2_velocity(s, op, f);
  return s;
}

ScalarField2D assemble_mN(const ExpansionState& s, int N) {
  const double eps = s.opt.eps, eps0 = s.opt.eps0;
  ScalarField2D m(s.tube.nx, s.tube.ny);
  for (size_t k = 0; k < m.data.size(); ++k) {
    double rho = s.tube.rho[k];
    m.data[k] = s.tube.in_tube[k] ? glued_profile(rho / eps, eps, eps0) : sgn(rho);
  }
  double ej = 1.0;
  for (int j = 1; j <= N; ++j) {
    ej *= eps;
    if (static_cast<int>(s.orders.size()) < j || s.orders[j - 1].phi.data.empty())
      throw std::invalid_argument("assemble_mN: order " + std::to_string(j) + " not built");
    const OrderData& o = s.orders[j - 1];
    for (size_t k = 0; k < m.data.size(); ++k) {
      double v = o.phi.data[k];
      if (s.tube.in_tube[k]) {
        double rho = s.tube.rho[k];
        v += h_at(s, j, rho / eps, s.tube.t[k]) * cutoff(rho / eps0);
      }
      m.data[k] += ej * v;
    }
  }
  return m;
}

ScalarField2D assemble_muN(const ExpansionState& s, int N) {
  ScalarField2D mu(s.tube.nx, s.tube.ny);
  double ej = 1.0;
  for (int j = 0; j < N; ++j) {
    mu = add(mu, s.orders.at(j).mu, ej);
    ej *= s.opt.eps;
  }
  return mu;
}

ForcingField truncated(const std::vector<ForcingField>& G, int N, double eps) {
  ForcingField out;
  double ej = 1.0;
  for (int j = 0; j < N && j < static_cast<int>(G.size()); ++j) {
    out += G[j] * ej;
    ej *= eps;
  }
  return out;
}

ResidualReport residual(const ScalarField2D& m_prev, const ScalarField2D& m, const ScalarField2D& m_next,
                        double dt, const ScalarField2D& mu, const ForcingField& G1, const ForcingField& G2,
                        double eps, const TubeGrid* tube) {
  ResidualReport r;
  ScalarField2D lmu = laplacian(mu), lm = laplacian(m);
  ScalarField2D g1 = G1.sample(m.nx, m.ny), g2 = G2.sample(m.nx, m.ny);
  const double dA = m.cell_area();
  double sum = 0.0;
  for (size_t k = 0; k < m.data.size(); ++k) {
    double R1 = (m_next.data[k] - m_prev.data[k]) / (2.0 * dt) - lmu.data[k] - g1.data[k];
    double v = m.data[k];
    double R2 = mu.data[k] + eps * lm.data[k] - (v * v * v - v) / eps + g2.data[k];
    r.R1_sup = std::max(r.R1_sup, std::abs(R1));
    sum += R1 * dA;
    r.R1_abs_int += std::abs(R1) * dA;
    r.R2_sup = std::max(r.R2_sup, std::abs(R2));
    if (tube) {
      if (tube->in_tube[k]) r.R2_sup_inner = std::max(r.R2_sup_inner, std::abs(R2));
      else r.R2_sup_outer = std::max(r.R2_sup_outer, std::abs(R2));
    }
  }
  r.R1_int = std::abs(sum);
  return r;
}

}  // namespace fch
