#pragma once

// Spatial semi-discretization on the uniform mass grid:
//
//   (eta^i)' = v^i,
//   rho^i (v^i)' = (1/h)[W^{i+1} - W^i] - (1/eps^2)(1/h)[P^{i+1} - P^i],   i = 1..N-1,
//
// with cell fluxes W^i = (v^i - v^{i-1})/(eta^i - eta^{i-1}) and
// P^i = (rho^i)^gamma [h^gamma/(eta^i - eta^{i-1})^gamma - 1].

#include <span>
#include <vector>

#include "vfbns/model.hpp"
#include "vfbns/polytropic.hpp"
#include "vfbns/state.hpp"

namespace vfbns {

/// Node-indexed coefficients for one grid, precomputed once per run.
class Scheme {
 public:
  Scheme(const SteadyProfile& profile, const Params& params);

  int cells() const { return N_; }
  double h() const { return h_; }
  double epsilon() const { return epsilon_; }
  double gamma() const { return law_.gamma(); }
  const PolytropicLaw& law() const { return law_; }
  const SteadyProfile& profile() const { return profile_; }
  const Params& params() const { return params_; }

  /// rho_bar(x_i), exactly zero at i = N.
  double rho(int i) const { return rho_[static_cast<std::size_t>(i)]; }
  double rho_gamma(int i) const { return rho_gamma_[static_cast<std::size_t>(i)]; }

  /// Pressure flux P^i of cell i = 1..N (P^N = 0).
  double pressure_flux(const LagrangianState& s, int i) const {
    return rho_gamma(i) * law_.bracket(s.stretch(i));
  }
  /// Viscous flux W^i of cell i = 1..N.
  double viscous_flux(const LagrangianState& s, int i) const {
    return (s.v(i) - s.v(i - 1)) / s.cell_width(i);
  }

  /// Writes (v^i)' for nodes 0..N into accel (size N+1), with accel[0] = 0
  /// and accel[N] = accel[N-1]. Returns the dissipation rate
  /// sum_{i=1}^{N-1} (v^i - v^{i-1})^2/(eta^i - eta^{i-1}) of the same state.
  double accelerations(const LagrangianState& s, std::span<double> accel) const;

 private:
  Params params_;
  SteadyProfile profile_;
  PolytropicLaw law_;
  int N_;
  double h_;
  double epsilon_;
  std::vector<double> rho_;
  std::vector<double> rho_gamma_;
  std::vector<double> inv_rho_h_;
  mutable std::vector<double> flux_;  // scratch, cells 1..N+1
};

/// (1/h){P^{i+1} - P^i} at interior node i.
double pressure_term(const LagrangianState& state, const SteadyProfile& profile,
                     const Params& params, int i);

/// (1/h){W^{i+1} - W^i} at interior node i.
double viscous_term(const LagrangianState& state, int i);

/// Accelerations (v^i)' for the interior nodes.
struct RhsVector {
  std::vector<double> accel;  // accel[k] = (v^{k+1})', k = 0..N-2

  double at(int i) const;  // node i = 0..N, boundary values implied
  int cells() const { return static_cast<int>(accel.size()) + 1; }
};

RhsVector rhs(const LagrangianState& state, const SteadyProfile& profile, const Params& params);

struct EulerianSample {
  double position;  // image of the cell midpoint, (eta^i + eta^{i-1})/2
  double density;   // rho_bar(x_{i-1/2}) h/(eta^i - eta^{i-1})
  double width;     // eta^i - eta^{i-1}
};

/// One sample per cell i = 1..N.
std::vector<EulerianSample> eulerian_density(const LagrangianState& state,
                                             const SteadyProfile& profile);

/// Sum of density * width over cells.
double eulerian_mass(const LagrangianState& state, const SteadyProfile& profile);

/// Gamma(t) = eta^N(t).
inline double free_boundary(const LagrangianState& state) { return state.eta(state.cells()); }

}  // namespace vfbns
