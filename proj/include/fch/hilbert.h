#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "fch/field.h"
#include "fch/forcing.h"
#include "fch/geometry.h"
#include "fch/potential.h"
#include "fch/profile1d.h"

namespace fch {

// Orientation: everything below uses rho = -d, positive inside Gamma, with the
// +1 phase inside and V positive along the outward normal.

class ExpansionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HilbertOptions {
  double eps = 0.04, eps0 = 0.2;
  int nx = 256, ny = 256;
  double z_max = 16.0;  // inner problems are posed on [-z_max, z_max]
  int nz = 3201;
  bool use_c0 = true;   // the [1 + c0(eps)] factor on mean velocities
  double tol = 1e-6;    // compatibility tolerance
};

// exp(-eps0/eps) / (1 - exp(-eps0/eps))
double c0_eps(double eps, double eps0);

// (1/(2|Gamma|)) [1 + c0] [int G1j - b_j]
double mean_velocity_j(int j, const Curve& c, double int_G1j, double b_j, double eps, double eps0,
                       bool use_c0 = true);

// Sharp-limit order-zero data on the markers.
struct VelocityZero {
  Eigen::VectorXd orth;      // V0^(0), zero Gamma-mean
  double mean = 0.0;         // <V0> without the c0 factor
  Eigen::VectorXd B;         // -2 [mu~000 + G20] on Gamma
  Eigen::VectorXd mu_tilde;  // mu~000 on Gamma
  double c = 0.0;            // constant of mu000
  double dirichlet_residual = 0.0;  // max |mu000 + mu~000 - (2SK - G20)| on Gamma
  std::vector<double> total(double factor = 1.0) const;  // orth + factor * mean
};
VelocityZero v0_orthogonal(const LayerPotential& lp, const ForcingLimit& f);

// tubular coordinates of the grid nodes
struct TubeGrid {
  int nx = 0, ny = 0;
  double eps0 = 0.0;
  std::vector<double> rho, t;
  std::vector<char> in_tube;
};
TubeGrid tube_grid(const Curve& c, int nx, int ny, double eps0);

// one order of the expansion: V_j, mu_j, and the corrections m_{j+1} = h_{j+1} + phi_{j+1}
struct OrderData {
  double mean_v = 0.0;       // <V_j> including the c0 factor when enabled
  double c = 0.0;            // c_j
  double b = 0.0;            // b_j
  double compat = 0.0;       // |int source - int G1j| relative
  Eigen::VectorXd v_orth;    // V_j^(0)
  Eigen::VectorXd B;         // B_j on Gamma
  ScalarField2D mu, lap_mu;  // mu_j and its Laplacian on the grid
  ScalarField2D phi;         // phi_{j+1}
  std::vector<Profile1D> h;  // h_{j+1}(z) per marker
  Eigen::VectorXd alpha;     // alpha_{j+1} per marker
  double h_even_defect = 0.0, h_tail = 0.0;
  std::vector<double> velocity() const;  // V_j on the markers
};

struct ExpansionState {
  HilbertOptions opt;
  Curve curve;
  TubeGrid tube;
  int built = 0;  // number of orders in `orders`
  std::vector<OrderData> orders;
  Eigen::VectorXd K;  // curvature at the markers
};

// order zero: V0, mu0 (mollified tube source), c0(t)
ExpansionState start_expansion(const GreenOperator& op, const Curve& c, const ForcingExpansion& f,
                               const HilbertOptions& opt);
// phi1 = (mu0 + G20)/2 and h1, alpha1 from the frozen inner problem
void h1_and_phi1(ExpansionState& s, const ForcingExpansion& f);
// V1, mu1, c1, then phi2, h2, alpha2
void order2_velocity(ExpansionState& s, const GreenOperator& op, const ForcingExpansion& f);
// orders 0..N-1 of the velocity and chemical potential, m up to order N (N = 1 or 2)
ExpansionState build_expansion(const GreenOperator& op, const Curve& c, const ForcingExpansion& f,
                               const HilbertOptions& opt, int N);

// b_1 = int D_{V0} m1 by tube quadrature (z grid x markers, Jacobian 1 - eps z K)
double b1_tube(const ExpansionState& s);
// the same integral as a grid sum of (1/eps) d/dz[h1 window] V0
double b1_grid(const ExpansionState& s);

// the tube source (1/eps) m0'(rho/eps) v(s) on the grid
ScalarField2D tube_source(const ExpansionState& s, const std::vector<double>& v);

// m^(N) on the grid and mu^(N-1) = sum_{j<N} eps^j mu_j
ScalarField2D assemble_mN(const ExpansionState& s, int N);
ScalarField2D assemble_muN(const ExpansionState& s, int N);

// h_j(z, t) at curve parameter t, j = 1, 2
double h_at(const ExpansionState& s, int j, double z, double t);

struct ResidualReport {
  double R1_sup = 0.0, R1_int = 0.0, R1_abs_int = 0.0, R2_sup = 0.0;
  double R2_sup_inner = 0.0, R2_sup_outer = 0.0;  // inside / outside the tube
};
// R1 = dm/dt - Lap mu - G1,  R2 = mu + eps Lap m - f(m)/eps + G2,
// with dm/dt by centered differences of m_prev and m_next over 2 dt
ResidualReport residual(const ScalarField2D& m_prev, const ScalarField2D& m, const ScalarField2D& m_next,
                        double dt, const ScalarField2D& mu, const ForcingField& G1, const ForcingField& G2,
                        double eps, const TubeGrid* tube = nullptr);

// sum_{j<N} eps^j G_ij
ForcingField truncated(const std::vector<ForcingField>& G, int N, double eps);

}  // namespace fch
