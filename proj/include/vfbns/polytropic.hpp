#pragma once

// Pressure-law helpers written in terms of the cell stretch s = J - 1, where
// J is the deformation Jacobian. Evaluating in s keeps every quantity that
// vanishes at the hydrostatic state exactly zero there, and keeps relative
// accuracy for small perturbations.

namespace vfbns {

class PolytropicLaw {
 public:
  explicit PolytropicLaw(double gamma);

  double gamma() const { return gamma_; }
  /// gamma when it is a small integer (2..8), else 0.
  int integer_gamma() const { return integer_gamma_; }

  /// J^{-gamma} - 1.
  double bracket(double s) const;

  /// J^{1-gamma}/(gamma-1) + J - gamma/(gamma-1), the nonnegative
  /// potential density of the basic energy.
  double potential(double s) const;

  /// J^{-gamma}.
  double power(double s) const;

 private:
  double gamma_;
  int integer_gamma_;  // 0 unless gamma is a small integer
};

}  // namespace vfbns
