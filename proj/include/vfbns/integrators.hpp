#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfbns/model.hpp"
#include "vfbns/scheme.hpp"
#include "vfbns/state.hpp"

namespace vfbns {

enum class IntegratorMode { explicit_reference, imex };

IntegratorMode parse_integrator_mode(const std::string& name);
std::string to_string(IntegratorMode mode);

struct StepPolicy {
  IntegratorMode mode = IntegratorMode::imex;
  double dt_safety = 0.5;
  double dt_max = 1e-2;
  double dt_min = 1e-15;  // abort threshold
  double fixed_dt = 0.0;  // > 0 bypasses the stability estimate

  void validate() const;
};

struct StableDt {
  double acoustic = 0.0;  // eps h min(J)^{(gamma+1)/2} / sqrt(gamma max rho_bar^{gamma-1})
  double viscous = 0.0;   // min_i rho^i (eta^i - eta^{i-1}) h / 2, i = 1..N-1
  double dt = 0.0;        // dt_safety * min over the active branches and dt_max
};

StableDt stable_dt_branches(const LagrangianState& state, const SteadyProfile& profile,
                            const Params& params, const StepPolicy& policy);

/// Throws IntegrationAbort when the result falls below policy.dt_min.
double stable_dt(const LagrangianState& state, const SteadyProfile& profile,
                 const Params& params, const StepPolicy& policy);

class Stepper {
 public:
  virtual ~Stepper() = default;
  /// Advances state by dt in place and returns the discrete dissipation
  /// integrated over the step with the method's own quadrature.
  virtual double step(LagrangianState& state, double dt) = 0;
  virtual const Scheme& scheme() const = 0;
};

/// Classical RK4 on the coupled (eta, v) system.
class ExplicitStepper final : public Stepper {
 public:
  ExplicitStepper(const SteadyProfile& profile, const Params& params);
  double step(LagrangianState& state, double dt) override;
  const Scheme& scheme() const override { return scheme_; }

 private:
  Scheme scheme_;
  LagrangianState stage_;
  std::vector<double> a_;
  std::vector<double> kx_, kv_;  // accumulated increments
};

/// v^{n+1}: explicit pressure at eta^n, implicit viscosity with cell widths
/// frozen at eta^n (one tridiagonal solve). Then eta^{n+1} = eta^n + dt v^{n+1}.
class ImexStepper final : public Stepper {
 public:
  ImexStepper(const SteadyProfile& profile, const Params& params);
  double step(LagrangianState& state, double dt) override;
  const Scheme& scheme() const override { return scheme_; }

 private:
  Scheme scheme_;
  std::vector<double> lower_, diag_, upper_, rhs_, width_;
};

std::unique_ptr<Stepper> make_stepper(IntegratorMode mode, const SteadyProfile& profile,
                                      const Params& params);

LagrangianState step_explicit(const LagrangianState& state, double dt, const SteadyProfile& profile,
                              const Params& params);
LagrangianState step_imex(const LagrangianState& state, double dt, const SteadyProfile& profile,
                          const Params& params);

struct Sample {
  double t = 0.0;
  LagrangianState state{4};
  double dissipated = 0.0;  // int_0^t D dt
};

struct Trajectory {
  std::vector<Sample> samples;
  long steps = 0;
  double dissipated = 0.0;
  double min_dt = 0.0;
  double max_dt = 0.0;
};

struct StepInfo {
  long index = 0;
  double t = 0.0;   // time after the step
  double dt = 0.0;
  double dissipated = 0.0;  // over this step
};

struct Hooks {
  /// Called at every schedule time, including t = 0.
  std::function<void(const Sample&)> on_sample;
  /// Called after every accepted step.
  std::function<void(const LagrangianState&, const StepInfo&)> on_step;
};

/// Raised when a run cannot continue. Carries the failing time and the
/// trajectory recorded up to that point.
class IntegrationAbort : public std::runtime_error {
 public:
  IntegrationAbort(const std::string& what, double t, Trajectory partial = {})
      : std::runtime_error(what), time_(t), partial_(std::move(partial)) {}
  double time() const { return time_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

/// n+1 equispaced times 0, T/n, ..., T.
std::vector<double> uniform_schedule(double t_end, int intervals);

/// Runs from state0.t to params.t_end, sampling at the schedule times that lie
/// in [state0.t, t_end]; steps are clipped to land on them exactly.
Trajectory integrate(const LagrangianState& state0, const SteadyProfile& profile,
                     const Params& params, const StepPolicy& policy,
                     const std::vector<double>& schedule, const Hooks& hooks = {});

}  // namespace vfbns
