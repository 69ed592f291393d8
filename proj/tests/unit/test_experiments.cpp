#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vfbns/experiments.hpp"

using namespace vfbns;

namespace {

Config base(int N, double t_end) {
  Config c;
  c.params.gamma = 2.0;
  c.params.epsilon = 1.0;
  c.params.N = N;
  c.params.t_end = t_end;
  c.samples = 10;
  return c;
}

const Verdict* find(const std::vector<Verdict>& vs, const std::string& name) {
  auto it = std::find_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.name == name; });
  return it == vs.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("equilibrium run stays at rest") {
  const RunReport r = run_single(base(32, 1.0));
  CHECK_FALSE(r.aborted);
  CHECK(r.all_pass());
  CHECK(r.records.size() == 11);
  for (const auto& rec : r.records) {
    CHECK(rec.E == 0.0);
    CHECK(rec.min_etax == 1.0);
    CHECK(rec.max_etax == 1.0);
  }
  const Verdict* eq = find(r.verdicts, "equilibrium_preserved");
  REQUIRE(eq != nullptr);
  CHECK(eq->measured == 0.0);
  LagrangianState rest(32);
  rest.t = r.final_state.t;
  CHECK(r.final_state == rest);
}

TEST_CASE("ill-prepared run dissipates energy inside the jacobian bound") {
  Config c = base(40, 2.0);
  c.kind = FamilyKind::ill_prepared;
  c.delta = 0.05;
  const RunReport r = run_single(c);
  CHECK_FALSE(r.aborted);
  for (const char* name : {"monotone_E", "jacobian_in_qbar"}) {
    const Verdict* v = find(r.verdicts, name);
    REQUIRE(v != nullptr);
    CHECK(v->pass);
  }
  CHECK(r.records.back().E < r.E0);
  CHECK(r.dissipated > 0.0);
  CHECK(r.min_etax < 1.0);
  CHECK(r.max_etax > 1.0);
  CHECK(r.qbar >= r.max_etax);
}

TEST_CASE("explicit run far beyond the stable step aborts") {
  Config c = base(40, 1.0);
  c.kind = FamilyKind::ill_prepared;
  c.delta = 0.05;
  c.integrator = IntegratorMode::explicit_reference;
  c.params.dt_safety = 10.0;
  const RunReport r = run_single(c);
  CHECK(r.aborted);
  CHECK_FALSE(r.all_pass());
  CHECK(r.abort_time < 1.0);
  CHECK_FALSE(r.abort_reason.empty());
}

TEST_CASE("runs are deterministic") {
  Config c = base(24, 0.5);
  c.kind = FamilyKind::ill_prepared;
  c.delta = 0.05;
  const RunReport a = run_single(c);
  const RunReport b = run_single(c);
  CHECK(a.final_state == b.final_state);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) CHECK(a.records[k].csv_values() == b.records[k].csv_values());
}

TEST_CASE("richardson orders") {
  const auto o = richardson_orders({1.0, 0.25, 0.0625});
  REQUIRE(o.size() == 2);
  CHECK(o[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(o[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(richardson_orders({1.0, 0.5})[0] == doctest::Approx(1.0));
}

TEST_CASE("restriction of nested states") {
  const SteadyProfile prof(2.0, 1.0, 1.0);
  auto eta = [](double x) { return x + 0.01 * x * x; };
  const auto coarse = build_state(prof, 8, eta, [](double) { return 0.0; });
  const auto fine = build_state(prof, 16, eta, [](double) { return 0.0; });
  // average of fine stretches over a coarse cell is the coarse stretch
  CHECK(restricted_difference(coarse, fine) < 1e-14);
  CHECK(restricted_difference(LagrangianState(8), LagrangianState(32)) == 0.0);
  CHECK_THROWS_AS(restricted_difference(LagrangianState(8), LagrangianState(12)), std::invalid_argument);
}

TEST_CASE("mesh refinement of the equilibrium is exact") {
  Config c = base(16, 0.5);
  const SweepReport s = mesh_refinement(c, {16, 32, 64});
  CHECK(s.exact);
  CHECK(s.all_pass());
  CHECK(s.runs.size() == 3);
  for (double d : s.differences) CHECK(d == 0.0);
}

TEST_CASE("epsilon sweep of a well-prepared family") {
  Config c = base(32, 0.2);
  c.kind = FamilyKind::well_prepared;
  c.delta = 0.1;
  const SweepReport s = epsilon_sweep(c, {0.5, 0.25, 0.125});
  REQUIRE(s.points.size() == 3);
  for (const auto& p : s.points) CHECK(p.completed);
  // the perturbation scales as eps^2 at t = 0
  CHECK(s.points[0].sup_etax_l2 > s.points[1].sup_etax_l2);
  CHECK(s.points[1].sup_etax_l2 > s.points[2].sup_etax_l2);
  CHECK(s.axis == "epsilon");
}

TEST_CASE("sweep threads honour the environment cap") {
  CHECK(sweep_threads(1) == 1);
  CHECK(sweep_threads(4) >= 1);
  CHECK(sweep_threads(4) <= 4);
}
