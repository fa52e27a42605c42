#include "fch/sharp_flow.h"

#include <cmath>
#include <iomanip>

#include "fch/profile1d.h"

namespace fch {

namespace {
double lam(int k, int l) { return M_PI * M_PI * (double(k) * k + double(l) * l); }
double norm_kl(int k, int l) { return (k == 0 ? 1.0 : 2.0) * (l == 0 ? 1.0 : 2.0); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace

ChemicalPotential::ChemicalPotential(const GreenOperator& op, const Curve& c, const ForcingLimit& f,
                                     const SharpFlowOptions& opt)
    : lp_(std::make_shared<LayerPotential>(op, c)) {
  const CosineCoeffs& a = f.G10.coeffs();
  vol_ = a;
  for (int l = 0; l < a.ny; ++l)
    for (int k = 0; k < a.nx; ++k) vol_(k, l) = (k == 0 && l == 0) ? 0.0 : a(k, l) / lam(k, l);

  const int N = c.size();
  const double S = surface_tension();
  std::vector<double> K = c.curvatures();
  const auto& P = c.points();
  g_.resize(N);
  for (int j = 0; j < N; ++j)
    g_[j] = opt.ms2a ? S * (K[j] - 2 * M_PI / c.arc_length()) : 2 * S * K[j] - f.G20(P[j]);
  Eigen::VectorXd rhs(N);
  for (int j = 0; j < N; ++j) rhs[j] = g_[j] - volume_part(P[j]);
  lp_->solve_bordered(rhs, f.G10.integral(), h_, c_);
  Eigen::VectorXd back = lp_->on_curve(h_);
  resid_ = 0.0;
  for (int j = 0; j < N; ++j) resid_ = std::max(resid_, std::abs(back[j] + c_ + volume_part(P[j]) - g_[j]));
}

double ChemicalPotential::volume_part(Vec2 p) const { return eval_spectral(vol_, p[0], p[1]); }

std::vector<double> ChemicalPotential::operator()(const std::vector<Vec2>& pts) const {
  std::vector<double> out = lp_->at(pts, h_);
  for (size_t i = 0; i < pts.size(); ++i) out[i] += volume_part(pts[i]) + c_;
  return out;
}

CosineCoeffs ChemicalPotential::coefficients(int modes) const {
  const Curve& c = curve();
  const int N = c.size();
  const int M = std::max(8 * N, 8 * modes * static_cast<int>(std::ceil(c.arc_length())));
  TrigSeries hs = TrigSeries::from_samples(to_std(h_));
  Eigen::VectorXd wh(M);
  Eigen::MatrixXd Cx(modes, M), Cy(modes, M);
  for (int q = 0; q < M; ++q) {
    double t = 2 * M_PI * q / M;
    Vec2 p = c.eval(t);
    wh[q] = 2 * M_PI / M * c.speed(t) * hs.eval(t);
    for (int k = 0; k < modes; ++k) {
      Cx(k, q) = std::cos(k * M_PI * p[0]);
      Cy(k, q) = std::cos(k * M_PI * p[1]);
    }
  }
  Eigen::MatrixXd B = Cx * wh.asDiagonal() * Cy.transpose();  // B(k, l)
  CosineCoeffs out{modes, modes, std::vector<double>(size_t(modes) * modes, 0.0)};
  for (int l = 0; l < modes; ++l)
    for (int k = 0; k < modes; ++k) {
      if (k == 0 && l == 0) continue;
      double v = -norm_kl(k, l) / lam(k, l) * B(k, l);
      if (k < vol_.nx && l < vol_.ny) v += vol_(k, l);
      out(k, l) = v;
    }
  return out;
}

double ChemicalPotential::grad_sq_integral(int modes) const {
  CosineCoeffs a = coefficients(modes);
  auto energy = [&](int K) {
    double s = 0.0;
    for (int l = 0; l < K; ++l)
      for (int k = 0; k < K; ++k) s += lam(k, l) * a(k, l) * a(k, l) / norm_kl(k, l);
    return s;
  };
  // tail of a field with a gradient jump across a curve decays like 1/K
  return 2.0 * energy(modes) - energy(modes / 2);
}

double ChemicalPotential::weighted_integral(const ForcingField& w) const {
  const CosineCoeffs& b = w.coeffs();
  int modes = std::max(b.nx, b.ny);
  CosineCoeffs a = coefficients(modes);
  double s = c_ * b(0, 0);
  for (int l = 0; l < b.ny; ++l)
    for (int k = 0; k < b.nx; ++k)
      if (k || l) s += a(k, l) * b(k, l) / norm_kl(k, l);
  return s;
}

ChemicalPotential chemical_potential(const GreenOperator& op, const Curve& c, const ForcingLimit& f,
                                     const SharpFlowOptions& opt) {
  return ChemicalPotential(op, c, f, opt);
}

std::vector<double> normal_velocity(const ChemicalPotential& mu) {
  std::vector<double> v = to_std(mu.density());
  for (double& x : v) x *= 0.5;
  return v;
}

FlowState make_state(const Curve& c, double t, const GreenOperator& op, const ForcingLimit& f,
                     const SharpFlowOptions& opt) {
  FlowState s;
  s.curve = c;
  s.t = t;
  s.area = c.enclosed_area();
  s.length = c.arc_length();
  ChemicalPotential mu(op, c, f, opt);
  s.mean_velocity = c.mean(normal_velocity(mu));
  s.boundary_residual = mu.boundary_residual();
  return s;
}

FlowState step(const FlowState& s, const GreenOperator& op, const ForcingLimit& f, double dt,
               const SharpFlowOptions& opt) {
  VelocityFn vel = [&](const Curve& c) { return normal_velocity(ChemicalPotential(op, c, f, opt)); };
  Curve next = evolve(s.curve, vel, dt, opt.evolve);
  return make_state(next, s.t + dt, op, f, opt);
}

double stable_dt(const Curve& c, double safety) {
  double hs = c.arc_length() / c.size();
  double kappa = (2.0 / 3.0) * M_PI / hs;
  return safety / (surface_tension() * kappa * kappa * kappa);
}

double RatePair::rel() const {
  double d = std::abs(lhs - rhs), m = std::max(std::abs(lhs), std::abs(rhs));
  return m > 0 ? d / m : d;
}

RatePair area_rate_check(const FlowState& s, const GreenOperator& op, const ForcingLimit& f,
                         const SharpFlowOptions& opt) {
  ChemicalPotential mu(op, s.curve, f, opt);
  return {2.0 * s.curve.integrate(normal_velocity(mu)), f.G10.integral()};
}

LengthRateReport length_rate_check(const FlowState& s, const GreenOperator& op, const ForcingLimit& f,
                                   double dt, const SharpFlowOptions& opt) {
  LengthRateReport r;
  const Curve& c = s.curve;
  ChemicalPotential mu(op, c, f, opt);
  std::vector<double> V = normal_velocity(mu), K = c.curvatures(), kv(c.size()), gv(c.size()), g2(c.size());
  const auto& P = c.points();
  for (int j = 0; j < c.size(); ++j) {
    kv[j] = K[j] * V[j];
    gv[j] = mu.dirichlet_data()[j] * V[j];
    g2[j] = f.G20(P[j]) * V[j];
  }
  r.kv = c.integrate(kv);
  r.mu_v_direct = c.integrate(gv);
  r.mu_v_gradient = 0.5 * (-mu.grad_sq_integral() + mu.weighted_integral(f.G10));
  r.split = (r.mu_v_direct + c.integrate(g2)) / (2.0 * surface_tension());
  FlowState n = step(s, op, f, dt, opt);
  r.fd_rate = (n.length - s.length) / dt;
  r.fd_area_rate = (n.area - s.area) / dt;
  return r;
}

void write_timeseries_header(std::ostream& os) {
  os << "t,area,length,mean_velocity,area_rate_lhs,area_rate_rhs,length_rate_lhs,length_rate_rhs\n";
}

void write_timeseries_row(std::ostream& os, const FlowState& s, const RatePair& area,
                          const LengthRateReport& len) {
  os << std::setprecision(12) << s.t << ',' << s.area << ',' << s.length << ',' << s.mean_velocity << ','
     << area.lhs << ',' << area.rhs << ',' << len.fd_rate << ',' << len.kv << '\n';
}

}  // namespace fch
