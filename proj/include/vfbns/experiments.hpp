#pragma once

#include <string>
#include <vector>

#include "vfbns/config.hpp"
#include "vfbns/energetics.hpp"
#include "vfbns/fitting.hpp"
#include "vfbns/initial_data.hpp"
#include "vfbns/state.hpp"

namespace vfbns {

struct Verdict {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // how measured compares to threshold, e.g. "<="
  bool pass = false;
  bool gating = true;    // informational verdicts do not affect the exit status
};

struct RunReport {
  Config config;
  std::vector<DiagnosticsRecord> records;
  std::vector<Verdict> verdicts;
  CompatibilityReport compatibility;
  LagrangianState final_state{4};

  double D0 = 1.0;
  double E0 = 0.0;
  double qbar = 1.0;
  double dissipated = 0.0;      // int_0^T D dt
  double v_l2l2 = 0.0;          // ||v||_{L^2(0,T;L^2)}, accumulated per step
  double min_etax = 1.0;        // over every accepted step
  double max_etax = 1.0;
  double max_abs_v = 0.0;
  double max_energy_increase = 0.0;  // largest E increase between samples
  long steps = 0;
  double wall_seconds = 0.0;

  bool aborted = false;
  std::string abort_reason;
  double abort_time = 0.0;

  bool all_pass() const;
};

RunReport run_single(const Config& config);

/// Samples (t, column) of a report, for decay monitoring.
std::vector<double> record_times(const RunReport& r);

struct SweepPoint {
  double axis = 0.0;
  double sup_etax_l2 = 0.0;  // sup over samples of ||eta_x - 1||_{L^2}
  double v_l2l2 = 0.0;
  double gamma_dev = 0.0;    // |Gamma(T) - 1|
  double el_tilde_0 = 0.0;
  double el_tilde_sup = 0.0;
  bool completed = true;
};

struct MetricFit {
  std::string metric;
  LinearFit fit;
  bool valid = false;
};

struct SweepReport {
  std::string axis;  // "epsilon" or "N"
  ExperimentKind experiment = ExperimentKind::sweep_eps;
  std::vector<SweepPoint> points;
  std::vector<MetricFit> fits;
  std::vector<double> orders;  // Richardson estimates, mesh sweeps
  std::vector<double> differences;  // ||J_N - R J_2N||, mesh sweeps
  bool exact = false;               // mesh sweep with identically zero differences
  std::vector<Verdict> verdicts;
  std::vector<RunReport> runs;
  bool degraded = false;

  bool all_pass() const;
};

SweepReport epsilon_sweep(const Config& config, const std::vector<double>& eps_list);
SweepReport mesh_refinement(const Config& config, const std::vector<int>& N_list);

/// Richardson order from differences on nested grids: log2(d_k / d_{k+1}).
std::vector<double> richardson_orders(const std::vector<double>& differences);

/// ||J_coarse - R J_fine||_{L^2} with R the average over the r fine cells of
/// each coarse cell.
double restricted_difference(const LagrangianState& coarse, const LagrangianState& fine);

/// Worker count for sweeps, capped by VFBNS_THREADS.
unsigned sweep_threads(std::size_t jobs);

}  // namespace vfbns
