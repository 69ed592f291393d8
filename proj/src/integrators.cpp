#include "vfbns/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vfbns {

IntegratorMode parse_integrator_mode(const std::string& name) {
  if (name == "explicit_reference" || name == "explicit") return IntegratorMode::explicit_reference;
  if (name == "imex") return IntegratorMode::imex;
  throw std::invalid_argument("integrator: unknown integrator '" + name + "'");
}

std::string to_string(IntegratorMode mode) {
  return mode == IntegratorMode::imex ? "imex" : "explicit_reference";
}

void StepPolicy::validate() const {
  if (!(dt_safety > 0.0) || !std::isfinite(dt_safety)) {
    throw std::invalid_argument("dt_safety: dt_safety must be positive");
  }
  if (!(dt_min > 0.0) || !(dt_max > dt_min)) {
    throw std::invalid_argument("dt_min: need 0 < dt_min < dt_max");
  }
  if (!(fixed_dt >= 0.0)) throw std::invalid_argument("fixed_dt: must be nonnegative");
}

StableDt stable_dt_branches(const LagrangianState& state, const SteadyProfile& profile,
                            const Params& params, const StepPolicy& policy) {
  const int N = state.cells();
  const double h = state.h();
  const double gamma = profile.gamma();
  double min_j = state.jacobian(1);
  for (int i = 2; i <= N; ++i) min_j = std::min(min_j, state.jacobian(i));
  // rho_bar^{gamma-1} is largest at x = 0
  const double max_rho_gm1 = profile.density_power_from_distance(profile.l_bar(), gamma - 1.0);
  StableDt out;
  out.acoustic = params.epsilon * h * std::pow(min_j, 0.5 * (gamma + 1.0)) /
                 std::sqrt(gamma * max_rho_gm1);
  out.viscous = std::numeric_limits<double>::infinity();
  for (int i = 1; i < N; ++i) {
    const double d = static_cast<double>(N - i) / N * profile.l_bar();
    out.viscous = std::min(out.viscous, profile.density_from_distance(d) * state.cell_width(i) * h / 2.0);
  }
  double dt = std::min(out.acoustic, policy.dt_max);
  if (policy.mode == IntegratorMode::explicit_reference) dt = std::min(dt, out.viscous);
  out.dt = policy.dt_safety * dt;
  return out;
}

double stable_dt(const LagrangianState& state, const SteadyProfile& profile, const Params& params,
                 const StepPolicy& policy) {
  const StableDt b = stable_dt_branches(state, profile, params, policy);
  if (!(b.dt >= policy.dt_min)) {
    std::ostringstream os;
    os << "stiffness: dt " << b.dt << " below dt_min " << policy.dt_min << " (acoustic "
       << b.acoustic << ", viscous " << b.viscous << ") at t=" << state.t;
    throw IntegrationAbort(os.str(), state.t);
  }
  return b.dt;
}

ExplicitStepper::ExplicitStepper(const SteadyProfile& profile, const Params& params)
    : scheme_(profile, params), stage_(params.N),
      a_(static_cast<std::size_t>(params.N + 1)),
      kx_(static_cast<std::size_t>(params.N - 1)), kv_(static_cast<std::size_t>(params.N - 1)) {}

double ExplicitStepper::step(LagrangianState& s, double dt) {
  const std::size_t n = static_cast<std::size_t>(s.cells() - 1);
  stage_ = s;
  const auto x0 = s.interior_displacement();
  const auto v0 = s.interior_velocity();
  auto xs = stage_.interior_displacement();
  auto vs = stage_.interior_velocity();
  const double* a = a_.data() + 1;  // a[k] = acceleration of node k+1
  const double half = 0.5 * dt;

  const double d1 = scheme_.accelerations(s, a_);
  for (std::size_t k = 0; k < n; ++k) {
    kx_[k] = v0[k];
    kv_[k] = a[k];
    xs[k] = x0[k] + half * v0[k];
    vs[k] = v0[k] + half * a[k];
  }
  stage_.impose_boundary();

  const double d2 = scheme_.accelerations(stage_, a_);
  for (std::size_t k = 0; k < n; ++k) {
    const double vk = vs[k];
    kx_[k] += 2.0 * vk;
    kv_[k] += 2.0 * a[k];
    xs[k] = x0[k] + half * vk;
    vs[k] = v0[k] + half * a[k];
  }
  stage_.impose_boundary();

  const double d3 = scheme_.accelerations(stage_, a_);
  for (std::size_t k = 0; k < n; ++k) {
    const double vk = vs[k];
    kx_[k] += 2.0 * vk;
    kv_[k] += 2.0 * a[k];
    xs[k] = x0[k] + dt * vk;
    vs[k] = v0[k] + dt * a[k];
  }
  stage_.impose_boundary();

  const double d4 = scheme_.accelerations(stage_, a_);
  const double sixth = dt / 6.0;
  for (std::size_t k = 0; k < n; ++k) {
    x0[k] += sixth * (kx_[k] + vs[k]);
    v0[k] += sixth * (kv_[k] + a[k]);
  }
  s.impose_boundary();
  s.t += dt;
  return sixth * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
}

ImexStepper::ImexStepper(const SteadyProfile& profile, const Params& params)
    : scheme_(profile, params) {
  const auto n = static_cast<std::size_t>(params.N - 1);
  lower_.resize(n);
  diag_.resize(n);
  upper_.resize(n);
  rhs_.resize(n);
  width_.resize(n);
}

double ImexStepper::step(LagrangianState& s, double dt) {
  const int N = s.cells();
  const double h = s.h();
  const double inv_eps2 = 1.0 / (scheme_.epsilon() * scheme_.epsilon());
  const std::size_t n = static_cast<std::size_t>(N - 1);
  auto v = s.interior_velocity();
  // Row k is node i = k+1; c_i = 1/(h w_i) couples nodes i-1 and i.
  double p_right = 0.0;  // P^{i+1}
  for (int i = N - 1; i >= 1; --i) {
    const auto k = static_cast<std::size_t>(i - 1);
    const double w_i = s.cell_width(i);
    width_[k] = w_i;
    const double p_i = scheme_.pressure_flux(s, i);
    const double m = scheme_.rho(i) / dt;
    rhs_[k] = m * v[k] - inv_eps2 * (p_right - p_i) / h;
    diag_[k] = m + 1.0 / (h * w_i);
    lower_[k] = -1.0 / (h * w_i);
    if (i < N - 1) {
      const double c = 1.0 / (h * width_[k + 1]);
      diag_[k] += c;
      upper_[k] = -c;
    } else {
      upper_[k] = 0.0;
    }
    p_right = p_i;
  }
  lower_[0] = 0.0;  // v^0 = 0
  // Thomas; diagonally dominant because rho^i/dt > 0.
  for (std::size_t k = 1; k < n; ++k) {
    const double m = lower_[k] / diag_[k - 1];
    diag_[k] -= m * upper_[k - 1];
    rhs_[k] -= m * rhs_[k - 1];
  }
  v[n - 1] = rhs_[n - 1] / diag_[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) v[k] = (rhs_[k] - upper_[k] * v[k + 1]) / diag_[k];

  double dissipation = 0.0;
  double v_left = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dv = v[k] - v_left;
    dissipation += dv * dv / width_[k];
    v_left = v[k];
  }
  auto xi = s.interior_displacement();
  for (std::size_t k = 0; k < n; ++k) xi[k] += dt * v[k];
  s.impose_boundary();
  s.t += dt;
  return dt * dissipation;
}

std::unique_ptr<Stepper> make_stepper(IntegratorMode mode, const SteadyProfile& profile,
                                      const Params& params) {
  if (mode == IntegratorMode::imex) return std::make_unique<ImexStepper>(profile, params);
  return std::make_unique<ExplicitStepper>(profile, params);
}

namespace {

template <class S>
LagrangianState one_step(const LagrangianState& state, double dt, const SteadyProfile& profile,
                         const Params& params) {
  state.check_jacobian();
  Params p = params;
  p.N = state.cells();
  S stepper(profile, p);
  LagrangianState out = state;
  stepper.step(out, dt);
  out.check_jacobian();
  return out;
}

}  // namespace

LagrangianState step_explicit(const LagrangianState& state, double dt, const SteadyProfile& profile,
                              const Params& params) {
  return one_step<ExplicitStepper>(state, dt, profile, params);
}

LagrangianState step_imex(const LagrangianState& state, double dt, const SteadyProfile& profile,
                          const Params& params) {
  return one_step<ImexStepper>(state, dt, profile, params);
}

std::vector<double> uniform_schedule(double t_end, int intervals) {
  if (intervals < 1) throw std::invalid_argument("samples: need at least one interval");
  std::vector<double> out(static_cast<std::size_t>(intervals + 1));
  for (int k = 0; k <= intervals; ++k) out[static_cast<std::size_t>(k)] = t_end * k / intervals;
  out.back() = t_end;
  return out;
}

Trajectory integrate(const LagrangianState& state0, const SteadyProfile& profile,
                     const Params& params, const StepPolicy& policy,
                     const std::vector<double>& schedule, const Hooks& hooks) {
  policy.validate();
  if (state0.cells() != params.N) throw std::invalid_argument("N: state and params disagree");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (!(schedule[k] > schedule[k - 1])) {
      throw std::invalid_argument("schedule: times must be strictly increasing");
    }
  }
  state0.check_jacobian();
  auto stepper = make_stepper(policy.mode, profile, params);
  LagrangianState s = state0;
  Trajectory traj;
  const double t_end = params.t_end;

  auto record = [&](double t) {
    s.t = t;
    Sample smp{t, s, traj.dissipated};
    if (hooks.on_sample) hooks.on_sample(smp);
    traj.samples.push_back(std::move(smp));
  };

  std::size_t next = 0;
  while (next < schedule.size() && schedule[next] < s.t) ++next;
  if (next < schedule.size() && schedule[next] == s.t) {
    record(s.t);
    ++next;
  }
  try {
    while (s.t < t_end) {
      const double target = next < schedule.size() ? std::min(schedule[next], t_end) : t_end;
      double dt = policy.fixed_dt > 0.0 ? policy.fixed_dt : stable_dt(s, profile, params, policy);
      const double remaining = target - s.t;
      bool lands = false;
      if (remaining <= dt * (1.0 + 1e-9)) {
        dt = remaining;
        lands = true;
      } else if (remaining < 2.0 * dt) {
        dt = 0.5 * remaining;
      }
      const double d = stepper->step(s, dt);
      s.check_jacobian();
      if (lands) s.t = target;
      traj.dissipated += d;
      ++traj.steps;
      traj.min_dt = traj.steps == 1 ? dt : std::min(traj.min_dt, dt);
      traj.max_dt = std::max(traj.max_dt, dt);
      if (hooks.on_step) hooks.on_step(s, StepInfo{traj.steps, s.t, dt, d});
      if (lands && next < schedule.size() && target == schedule[next]) {
        record(target);
        ++next;
      }
    }
  } catch (const JacobianCollapse& e) {
    throw IntegrationAbort(std::string("integration aborted: ") + e.what(), s.t, std::move(traj));
  } catch (const IntegrationAbort& e) {
    throw IntegrationAbort(e.what(), e.time(), std::move(traj));
  }
  return traj;
}

}  // namespace vfbns
