#pragma once

#include <Eigen/Dense>
#include <memory>
#include <ostream>
#include <vector>

#include "fch/forcing.h"
#include "fch/geometry.h"
#include "fch/potential.h"

namespace fch {

struct SharpFlowOptions {
  bool ms2a = false;  // homogeneous variant mu = S (K - 2 pi/|Gamma|)
  EvolveOptions evolve;
};

// mu = u_vol + phi_h + c with Laplacian u_vol = -G10 + mean, phi_h the single
// layer of h, and (h, c) fixed by the Dirichlet data on the curve and int h = int G10.
class ChemicalPotential {
 public:
  ChemicalPotential(const GreenOperator& op, const Curve& c, const ForcingLimit& f,
                    const SharpFlowOptions& opt = {});

  const Curve& curve() const { return lp_->curve(); }
  const LayerPotential& layer() const { return *lp_; }
  const Eigen::VectorXd& density() const { return h_; }  // full normal-derivative jump
  double constant() const { return c_; }
  const Eigen::VectorXd& dirichlet_data() const { return g_; }
  double boundary_residual() const { return resid_; }

  std::vector<double> operator()(const std::vector<Vec2>& pts) const;
  double volume_part(Vec2 p) const;
  const CosineCoeffs& volume_coeffs() const { return vol_; }

  // cosine coefficients of mu - c on a modes x modes truncation
  CosineCoeffs coefficients(int modes) const;
  // int |grad mu|^2 over the box, Parseval with extrapolation in the truncation
  double grad_sq_integral(int modes = 256) const;
  // int mu G10 over the box
  double weighted_integral(const ForcingField& w) const;

 private:
  std::shared_ptr<LayerPotential> lp_;
  Eigen::VectorXd h_, g_;
  double c_ = 0.0, resid_ = 0.0;
  CosineCoeffs vol_;
};

ChemicalPotential chemical_potential(const GreenOperator& op, const Curve& c, const ForcingLimit& f,
                                     const SharpFlowOptions& opt = {});

// V0 = half the jump, outward positive
std::vector<double> normal_velocity(const ChemicalPotential& mu);

struct FlowState {
  Curve curve;
  double t = 0.0;
  double area = 0.0, length = 0.0, mean_velocity = 0.0;
  double boundary_residual = 0.0;
};

FlowState make_state(const Curve& c, double t, const GreenOperator& op, const ForcingLimit& f,
                     const SharpFlowOptions& opt = {});

// one RK2 step
FlowState step(const FlowState& s, const GreenOperator& op, const ForcingLimit& f, double dt,
               const SharpFlowOptions& opt = {});

// largest stable explicit step, c * spacing^3 scaled by the surface tension
double stable_dt(const Curve& c, double safety = 0.25);

struct RatePair {
  double lhs = 0.0, rhs = 0.0;
  double rel() const;
};

// (2 int V0, int G10)
RatePair area_rate_check(const FlowState& s, const GreenOperator& op, const ForcingLimit& f,
                         const SharpFlowOptions& opt = {});

struct LengthRateReport {
  double fd_rate = 0.0;          // finite-difference d|Gamma|/dt
  double kv = 0.0;               // int K V0
  double mu_v_direct = 0.0;      // int mu V0 on the curve
  double mu_v_gradient = 0.0;    // (-int |grad mu|^2 + int mu G10) / 2
  double split = 0.0;            // (int mu V0 + int V0 G20) / (2S)
  double fd_area_rate = 0.0;     // finite-difference d|Omega^-|/dt
};

LengthRateReport length_rate_check(const FlowState& s, const GreenOperator& op, const ForcingLimit& f,
                                   double dt, const SharpFlowOptions& opt = {});

void write_timeseries_header(std::ostream& os);
void write_timeseries_row(std::ostream& os, const FlowState& s, const RatePair& area,
                          const LengthRateReport& len);

}  // namespace fch
