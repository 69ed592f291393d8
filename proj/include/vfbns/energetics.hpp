#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vfbns/model.hpp"
#include "vfbns/scheme.hpp"
#include "vfbns/state.hpp"

namespace vfbns {

/// Reconstructed time and space derivatives of one state.
/// Node arrays have size N+1 (nodes 0..N), cell arrays size N+1 (cells 1..N,
/// entry 0 unused).
struct DerivativeStencils {
  std::vector<double> vt;       // (v^i)' from the momentum equation
  std::vector<double> vtt;      // (v^i)'' from its time derivative
  std::vector<double> eta_xx;   // second differences, nodes 1..N-1
  std::vector<double> v_xx;
  std::vector<double> eta_xxx;  // third differences, cells 2..N
  std::vector<double> v_xxx;
  double dissipation = 0.0;
};

struct LowEnergyParts {
  double kinetic = 0.0;           // int rho v^2
  double stretch_weighted = 0.0;  // int rho^{1-gamma+alpha} (eta_x-1)^2
  double curvature_weighted = 0.0;  // int rho^{gamma-1+alpha} eta_xx^2
  double velocity_gradient = 0.0;   // eps^2 int v_x^2
  double curvature_timed = 0.0;     // eps^2 (1+t)^{-(gamma-1)/gamma+alpha} int eta_xx^2
  double acceleration = 0.0;        // eps^4 int rho v_t^2
  double pressure = 0.0;            // eps^-2 int rho^gamma (eta_x-1)^2
  double sup_etax = 1.0;
  double sup_inv_etax = 1.0;

  double total() const {
    return kinetic + stretch_weighted + curvature_weighted + velocity_gradient + curvature_timed +
           acceleration + pressure + sup_etax + sup_inv_etax;
  }
};

struct HighEnergyParts {
  double acceleration = 0.0;  // eps^8 int rho v_tt^2
  double third_weighted = 0.0;  // eps^2 int rho^{3gamma-3+alpha} eta_xxx^2
  double third_timed = 0.0;     // eps^8 (1+t)^{-(3gamma-3+alpha)/gamma} int eta_xxx^2

  double total() const { return acceleration + third_weighted + third_timed; }
};

struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;
  double D = 0.0;
  double EN = 0.0;
  double EL = 0.0;
  double EH = 0.0;
  double EL_tilde = 0.0;
  double min_etax = 1.0;
  double max_etax = 1.0;
  double qbar = 1.0;
  double gamma_fb = 1.0;
  double mass = 0.0;
  // Monitored groups, not part of the CSV row.
  double group_velocity = 0.0;      // eps^4 int rho v_t^2 + eps^4 int v_x^2
  double group_acceleration = 0.0;  // eps^8 int rho v_tt^2 + eps^8 sup v_tx^2
  double etax_l2 = 0.0;             // || eta_x - 1 ||_{L^2}
  double v_l2 = 0.0;                // || v ||_{L^2}
  double max_abs_v = 0.0;
  double max_abs_displacement = 0.0;

  static const std::vector<std::string>& csv_columns();
  std::vector<double> csv_values() const;
};

/// Cheap per-step quantities, gathered in one pass.
struct StepMonitor {
  double E = 0.0;
  double v_l2_sq = 0.0;  // sum over interior nodes of v^2 h
  double min_etax = 1.0;
  double max_etax = 1.0;
  double max_abs_v = 0.0;
  double max_abs_displacement = 0.0;
};

/// Cached weights for repeated evaluation on one grid.
class Energetics {
 public:
  Energetics(const SteadyProfile& profile, const Params& params);

  const Scheme& scheme() const { return scheme_; }

  double basic_energy(const LagrangianState& s) const;
  StepMonitor step_monitor(const LagrangianState& s) const;
  DerivativeStencils derivatives(const LagrangianState& s) const;
  double discrete_energy_EN(const LagrangianState& s, const DerivativeStencils& d) const;
  LowEnergyParts low_energy(const LagrangianState& s, const DerivativeStencils& d, double t) const;
  HighEnergyParts high_energy(const LagrangianState& s, const DerivativeStencils& d, double t) const;
  double well_prepared_energy(const LagrangianState& s, const DerivativeStencils& d) const;
  DiagnosticsRecord record(const LagrangianState& s, double qbar) const;

 private:
  Scheme scheme_;
  double alpha_;
  std::vector<double> node_w_curv_;  // rho^{gamma-1+alpha} at nodes
  std::vector<double> mid_rho_;      // rho at x_{i-1/2}, cells 1..N
  std::vector<double> mid_w_stretch_;  // rho^{1-gamma+alpha}
  std::vector<double> mid_w_gamma_;    // rho^gamma
  std::vector<double> mid_w_third_;    // rho^{3gamma-3+alpha}
};

double basic_energy(const LagrangianState& state, const SteadyProfile& profile, const Params& params);
double dissipation(const LagrangianState& state);
DerivativeStencils derivative_stencils(const LagrangianState& state, const SteadyProfile& profile,
                                       const Params& params);
double discrete_energy_EN(const LagrangianState& state, const SteadyProfile& profile,
                          const Params& params);
double low_energy_EL(const LagrangianState& state, const DerivativeStencils& d,
                     const SteadyProfile& profile, const Params& params, double t);
double high_energy_EH(const LagrangianState& state, const DerivativeStencils& d,
                      const SteadyProfile& profile, const Params& params, double t);
double well_prepared_energy(const LagrangianState& state, const DerivativeStencils& d,
                            const SteadyProfile& profile, const Params& params);

/// D0^2 exp(4 sqrt(M e0)).
double qbar_bound(double D0, double M, double e0);

/// max over cells of max(J, 1/J).
double measured_D0(const LagrangianState& state);

struct HardyResult {
  double lhs = 0.0;    // int rho^beta w^2
  double rhs = 0.0;    // int rho^{beta+2(gamma-1)} w_x^2
  double ratio = 0.0;  // lhs/rhs, 0 when w vanishes
};

/// w sampled at x_i = i/n, i = 0..n. Midpoint quadrature over cells with
/// cell-averaged w and differenced w_x. Throws on beta <= -(gamma-1).
HardyResult hardy_ratio(std::span<const double> w, double beta, const SteadyProfile& profile);
HardyResult hardy_ratio(const std::function<double(double)>& w, int n, double beta,
                        const SteadyProfile& profile);

struct DecayMonitor {
  double sup = 0.0;        // sup_k (1+t_k)^theta q_k
  std::size_t index = 0;   // attaining sample
  double t_at_sup = 0.0;
  double tail_slope = 0.0;  // slope of log weighted q vs log(1+t) on the last half
  int tail_samples = 0;
};

DecayMonitor decay_monitor(std::span<const double> t, std::span<const double> q, double theta);

}  // namespace vfbns
