#include <doctest.h>

#include <cmath>

#include "vfbns/energetics.hpp"
#include "vfbns/initial_data.hpp"
#include "vfbns/integrators.hpp"

using namespace vfbns;

namespace {

Params params_for(double gamma, double eps, int N, double t_end = 1.0) {
  Params p;
  p.gamma = gamma;
  p.epsilon = eps;
  p.N = N;
  p.t_end = t_end;
  return p;
}

LagrangianState perturbed(const SteadyProfile& prof, int N, double delta) {
  DataFamily f;
  f.kind = FamilyKind::ill_prepared;
  f.delta = delta;
  return perturbed_data(prof, N, f, 1.0).to_state();
}

double max_diff(const LagrangianState& a, const LagrangianState& b) {
  double m = 0.0;
  for (int i = 0; i <= a.cells(); ++i) {
    m = std::max(m, std::abs(a.displacement(i) - b.displacement(i)));
    m = std::max(m, std::abs(a.v(i) - b.v(i)));
  }
  return m;
}

LagrangianState advance(LagrangianState s, Stepper& st, double dt, int steps) {
  for (int k = 0; k < steps; ++k) st.step(s, dt);
  return s;
}

}  // namespace

TEST_CASE("stable_dt branches") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const LagrangianState eq(100);
  StepPolicy pol;
  pol.dt_safety = 1.0;
  pol.dt_max = 1.0;
  pol.mode = IntegratorMode::imex;
  const auto b = stable_dt_branches(eq, prof, params_for(2.0, 1.0, 100), pol);
  CHECK(b.acoustic == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(b.dt == b.acoustic);
  const auto bh = stable_dt_branches(eq, prof, params_for(2.0, 0.5, 100), pol);
  CHECK(bh.acoustic == doctest::Approx(0.5 * b.acoustic).epsilon(1e-14));
  pol.mode = IntegratorMode::explicit_reference;
  const auto be = stable_dt_branches(eq, prof, params_for(2.0, 1.0, 100), pol);
  CHECK(be.dt == be.viscous);
  // rho^{N-1} h^2 / 2 with rho^{N-1} = h/2
  CHECK(be.viscous == doctest::Approx(0.005 * 1e-4 / 2).epsilon(1e-12));

  const SteadyProfile p14(1.4, 1.0, 1.0);
  const LagrangianState eq400(400);
  pol.mode = IntegratorMode::imex;
  const double imex = stable_dt(eq400, p14, params_for(1.4, 0.05, 400), pol);
  pol.mode = IntegratorMode::explicit_reference;
  const double expl = stable_dt(eq400, p14, params_for(1.4, 0.05, 400), pol);
  CHECK(imex == doctest::Approx(stable_dt_branches(eq400, p14, params_for(1.4, 0.05, 400), pol).acoustic));
  CHECK(expl < 1e-6 * imex);

  pol.dt_min = 1.0;
  pol.dt_max = 2.0;
  CHECK_THROWS_AS(stable_dt(eq, prof, params_for(2.0, 1.0, 100), pol), IntegrationAbort);
}

TEST_CASE("equilibrium is a fixed point of both steppers") {
  for (double gamma : {1.4, 2.0}) {
    const SteadyProfile prof(gamma, 1.0, 1.0);
    const Params p = params_for(gamma, 0.1, 50);
    const LagrangianState eq(50);
    auto a = step_explicit(eq, 1e-3, prof, p);
    auto b = step_imex(eq, 1e-2, prof, p);
    CHECK(max_diff(a, eq) == 0.0);
    CHECK(max_diff(b, eq) == 0.0);
    CHECK(a.t == 1e-3);
  }
}

TEST_CASE("boundary identities after a step") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const Params p = params_for(2.0, 1.0, 32);
  const auto s0 = perturbed(prof, 32, 0.05);
  for (const auto& s : {step_explicit(s0, 1e-6, prof, p), step_imex(s0, 1e-3, prof, p)}) {
    CHECK(s.v(0) == 0.0);
    CHECK(s.v(-1) == 0.0);
    CHECK(s.v(32) == s.v(31));
    CHECK(s.v(33) == s.v(32));
    CHECK(s.eta(0) == 0.0);
    CHECK(s.eta(-1) == 0.0);
    CHECK(s.eta(32) - s.eta(31) == doctest::Approx(s0.eta(32) - s0.eta(31)).epsilon(1e-13));
    CHECK(s.eta(33) - s.eta(32) == doctest::Approx(s0.eta(33) - s0.eta(32)).epsilon(1e-13));
  }
}

TEST_CASE("RK4 temporal order") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const int N = 16;
  const Params p = params_for(2.0, 1.0, N);
  const auto s0 = perturbed(prof, N, 0.05);
  StepPolicy pol;
  pol.mode = IntegratorMode::explicit_reference;
  pol.dt_safety = 1.0;
  const double dt = stable_dt(s0, prof, p, pol);
  ExplicitStepper st(prof, p);
  const int n = 64;
  const auto ref = advance(s0, st, dt / 64, n * 64);
  const double e1 = max_diff(advance(s0, st, dt, n), ref);
  const double e2 = max_diff(advance(s0, st, dt / 2, 2 * n), ref);
  const double e4 = max_diff(advance(s0, st, dt / 4, 4 * n), ref);
  MESSAGE("RK4 errors " << e1 << " " << e2 << " " << e4);
  CHECK(std::log2(e1 / e2) >= 3.8);
  CHECK(std::log2(e2 / e4) >= 3.8);
}

TEST_CASE("IMEX converges to the explicit solution at first order") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const int N = 16;
  const Params p = params_for(2.0, 1.0, N);
  const auto s0 = perturbed(prof, N, 0.05);
  StepPolicy pol;
  pol.mode = IntegratorMode::explicit_reference;
  pol.dt_safety = 0.5;
  const double dte = stable_dt(s0, prof, p, pol);
  const double T = 0.05;
  ExplicitStepper ex(prof, p);
  const int ne = static_cast<int>(std::ceil(T / dte));
  const auto ref = advance(s0, ex, T / ne, ne);
  ImexStepper im(prof, p);
  std::vector<double> errs;
  for (int n : {50, 100, 200, 400}) errs.push_back(max_diff(advance(s0, im, T / n, n), ref));
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
    CHECK(errs[k] / errs[k + 1] == doctest::Approx(2.0).epsilon(0.2));
  }
}

TEST_CASE("schedule landing and trajectory contract") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const Params p = params_for(2.0, 1.0, 20, 2.0);
  StepPolicy pol;
  const auto traj = integrate(perturbed(prof, 20, 0.05), prof, p, pol, {0.0, 1.0, 2.0});
  REQUIRE(traj.samples.size() == 3);
  CHECK(traj.samples[0].t == 0.0);
  CHECK(traj.samples[1].t == 1.0);
  CHECK(traj.samples[2].t == 2.0);
  CHECK(traj.samples[2].state.t == 2.0);
  CHECK(traj.steps > 2);

  const auto eq = integrate(LagrangianState(20), prof, params_for(2.0, 1.0, 20, 10.0), pol,
                            uniform_schedule(10.0, 10));
  REQUIRE(eq.samples.size() == 11);
  for (const auto& s : eq.samples) CHECK(max_diff(s.state, LagrangianState(20)) == 0.0);

  CHECK_THROWS_AS(integrate(LagrangianState(20), prof, p, pol, {0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("basic energy is nonincreasing along both integrators") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const int N = 40;
  const Params p = params_for(2.0, 1.0, N, 1.0);
  const Energetics en(prof, p);
  for (auto mode : {IntegratorMode::imex, IntegratorMode::explicit_reference}) {
    StepPolicy pol;
    pol.mode = mode;
    double prev = en.basic_energy(perturbed(prof, N, 0.05));
    double worst = -1.0;
    Hooks hooks;
    hooks.on_step = [&](const LagrangianState& s, const StepInfo&) {
      const double E = en.basic_energy(s);
      worst = std::max(worst, E - prev);
      prev = E;
    };
    integrate(perturbed(prof, N, 0.05), prof, p, pol, {0.0, 1.0}, hooks);
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("explicit energy identity on a small grid") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const int N = 20;
  const Params p = params_for(2.0, 1.0, N, 0.5);
  const Energetics en(prof, p);
  const auto s0 = perturbed(prof, N, 0.05);
  StepPolicy pol;
  pol.mode = IntegratorMode::explicit_reference;
  pol.dt_safety = 0.1;
  const auto traj = integrate(s0, prof, p, pol, {0.0, 0.5});
  const double E0 = en.basic_energy(s0);
  const double ET = en.basic_energy(traj.samples.back().state);
  CHECK(std::abs(ET + traj.dissipated - E0) <= 1e-9 * E0);
}

TEST_CASE("determinism") {
  const SteadyProfile prof(1.4, 1.0, 1.0);
  const Params p = params_for(1.4, 0.3, 50, 0.5);
  StepPolicy pol;
  const auto s0 = perturbed(prof, 50, 0.05);
  const auto a = integrate(s0, prof, p, pol, uniform_schedule(0.5, 5));
  const auto b = integrate(s0, prof, p, pol, uniform_schedule(0.5, 5));
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].state == b.samples[k].state);
  CHECK(a.dissipated == b.dissipated);
}

TEST_CASE("violating the stability bound aborts with the failing time") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  const Params p = params_for(2.0, 1.0, 40, 1.0);
  StepPolicy pol;
  pol.mode = IntegratorMode::explicit_reference;
  pol.dt_safety = 10.0;
  try {
    integrate(perturbed(prof, 40, 0.05), prof, p, pol, uniform_schedule(1.0, 10));
    FAIL("expected an abort");
  } catch (const IntegrationAbort& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() < 1.0);
    CHECK(!e.partial().samples.empty());
  }
}
