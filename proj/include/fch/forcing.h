#pragma once

#include <string>
#include <vector>

#include "fch/field.h"

namespace fch {

// Smooth field on the unit square stored as a truncated cosine series,
// so the normal derivative vanishes on the walls by construction.
class ForcingField {
 public:
  ForcingField();  // zero
  static ForcingField constant(double c);
  static ForcingField cosine(double amp, int k, int l);
  // Gaussian bump projected on the cosine basis of a modes x modes grid
  static ForcingField gaussian(double amp, Vec2 x0, double sigma, int modes = 64);
  static ForcingField from_coeffs(CosineCoeffs a);

  double operator()(Vec2 p) const;
  Vec2 grad(Vec2 p) const;
  double laplacian(Vec2 p) const;
  double integral() const { return a_(0, 0); }
  bool is_zero() const;
  ScalarField2D sample(int nx, int ny) const;
  std::vector<double> sample(const std::vector<Vec2>& pts) const;
  // largest normal derivative on the walls from the series, should be ~0
  double wall_flux() const;
  const CosineCoeffs& coeffs() const { return a_; }

  ForcingField& operator+=(const ForcingField& o);
  ForcingField operator+(const ForcingField& o) const;
  ForcingField operator*(double s) const;
  ForcingField operator-() const { return (*this) * -1.0; }

  std::string describe() const { return desc_; }

 private:
  CosineCoeffs a_;
  std::string desc_;
};

// G1 and G2 as power series in eps: G_i = sum_j eps^j G_ij
struct ForcingExpansion {
  std::vector<ForcingField> G1, G2;
  double remainder_bound = 0.0;
  int orders() const { return static_cast<int>(std::max(G1.size(), G2.size())); }
  ForcingField g1(int j) const { return j < static_cast<int>(G1.size()) ? G1[j] : ForcingField(); }
  ForcingField g2(int j) const { return j < static_cast<int>(G2.size()) ? G2[j] : ForcingField(); }
  ForcingField G1_at(double eps) const;
  ForcingField G2_at(double eps) const;
  ForcingExpansion negated() const;
};

// leading-order forcing seen by the sharp-interface problem
struct ForcingLimit {
  ForcingField G10, G20;
  ForcingLimit negated() const { return {-G10, -G20}; }
};

inline ForcingLimit limit_of(const ForcingExpansion& e) { return {e.g1(0), e.g2(0)}; }

}  // namespace fch
