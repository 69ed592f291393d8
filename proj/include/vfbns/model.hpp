#pragma once

// Background objects for the vacuum free-boundary gas: parameters, the
// hydrostatic steady profile and the normalization l_bar = 1, g = 1 that all
// other modules work in.

#include <string>

namespace vfbns {

struct Params {
  double gamma = 1.4;      // adiabatic exponent, > 1
  double epsilon = 1.0;    // Mach = Froude number, in (0, 1]
  double g = 1.0;          // gravity
  double alpha = 0.1;      // slack exponent of the weighted energies
  int N = 200;             // number of cells
  double dt_safety = 0.5;  // step-size safety factor
  double t_end = 20.0;     // simulation horizon


  bool operator==(const Params&) const = default;
  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Hydrostatic density rho_bar(x) = [g (gamma-1)/gamma (l_bar - x)]^{1/(gamma-1)}
/// on [0, l_bar], zero beyond. Immutable.
class SteadyProfile {
 public:
  SteadyProfile(double gamma, double g, double l_bar);

  double gamma() const { return gamma_; }
  double g() const { return g_; }
  double l_bar() const { return l_bar_; }
  double mass() const { return mass_; }

  double density(double x) const;

  /// rho_bar evaluated at distance d = l_bar - x from the vacuum boundary.
  /// Taking the distance directly keeps rho_bar exactly zero at the boundary
  /// node of a uniform grid.
  double density_from_distance(double d) const;

  /// rho_bar^p at distance d; p may be negative (singular weights), in which
  /// case d must be strictly positive.
  double density_power_from_distance(double d, double p) const;
  double density_power(double x, double p) const {
    return density_power_from_distance(l_bar_ - x, p);
  }

 private:
  double gamma_;
  double g_;
  double l_bar_;
  double slope_;  // g (gamma-1)/gamma
  double mass_;
};

double steady_density(const SteadyProfile& profile, double x);

/// Total mass M = (1/g) (l_bar (gamma-1) g / gamma)^{gamma/(gamma-1)}.
double steady_mass(double gamma, double g, double l_bar);

/// Inverse of steady_mass: l_bar = gamma/((gamma-1) g) (M g)^{(gamma-1)/gamma}.
double domain_length(double gamma, double g, double mass);

struct NormalizedModel {
  Params params;
  SteadyProfile profile;
};

/// Rescales to l_bar = 1, g = 1. Only gamma survives the rescaling of the
/// steady state; epsilon, alpha and the numerical fields are carried over.
NormalizedModel normalize(const Params& params);

}  // namespace vfbns
