#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fch/field.h"
#include "fch/geometry.h"

namespace fch {

// Neumann Green function of the unit square: Laplacian = delta - 1, zero mean.
// Evaluated as the n = 0 cosine mode in closed form plus the remaining modes
// summed in x as exponentials, which collapse to logarithms of image distances.
class GreenOperator {
 public:
  explicit GreenOperator(Box dom = {}, int images = 6);
  double operator()(Vec2 xi, Vec2 eta) const;
  // G - (1/2pi) log|xi - eta|, finite at coincidence
  double regular_part(Vec2 xi, Vec2 eta) const;
  Vec2 grad_xi(Vec2 xi, Vec2 eta) const;
  const Box& domain() const { return dom_; }

 private:
  double sum(Vec2 xi, Vec2 eta, bool drop_log) const;
  Box dom_;
  int images_;
};

// v = int G(., eta) f(eta) d eta on the grid, computed spectrally.
ScalarField2D volume_potential(const GreenOperator& op, const ScalarField2D& f);

// Boundary operators on one curve: single layer, S, T, jump and extensions.
class LayerPotential {
 public:
  LayerPotential(const GreenOperator& op, const Curve& c);

  const Curve& curve() const { return curve_; }
  const Eigen::MatrixXd& matrix() const { return A_; }
  const Eigen::VectorXd& weights() const { return w_; }  // dS quadrature weights

  // phi_h at the markers (log-corrected quadrature)
  Eigen::VectorXd on_curve(const Eigen::VectorXd& h) const;
  // phi_h at arbitrary points; refines the density near the curve
  std::vector<double> at(const std::vector<Vec2>& pts, const Eigen::VectorXd& h) const;

  double gamma_mean(const Eigen::VectorXd& f) const;

  // (phi_v on Gamma) minus its Gamma-mean; v must have zero Gamma-mean
  Eigen::VectorXd S(const Eigen::VectorXd& v) const;
  // inverse of S on mean-zero data, returns mean-zero density
  Eigen::VectorXd T(const Eigen::VectorXd& g) const;
  // outside minus inside normal derivative of phi_h, by one-sided differences
  Eigen::VectorXd neumann_jump(const Eigen::VectorXd& h) const;

  std::vector<double> extension_neumann(const Eigen::VectorXd& v, const std::vector<Vec2>& pts) const;
  std::vector<double> extension_dirichlet(const Eigen::VectorXd& g, const std::vector<Vec2>& pts) const;

  // solve A h + c = g, w.h = flux   (Dirichlet data g, side condition on int h)
  void solve_bordered(const Eigen::VectorXd& g, double flux, Eigen::VectorXd& h, double& c) const;

  double condition_estimate() const { return cond_; }

 private:
  Eigen::VectorXd filter(const Eigen::VectorXd& f) const;
  const GreenOperator& op_;
  Curve curve_;
  Eigen::MatrixXd A_;
  Eigen::VectorXd w_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double cond_ = 0.0;
};

// free functions mirroring the operator vocabulary
double green(const GreenOperator& op, Vec2 xi, Vec2 eta);
Eigen::VectorXd dn_inverse(const LayerPotential& lp, const Eigen::VectorXd& v);
Eigen::VectorXd dirichlet_neumann(const LayerPotential& lp, const Eigen::VectorXd& g);
Eigen::VectorXd neumann_jump(const LayerPotential& lp, const Eigen::VectorXd& h);

}  // namespace fch
