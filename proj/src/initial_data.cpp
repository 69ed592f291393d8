#include "vfbns/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "vfbns/polytropic.hpp"

namespace vfbns {

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  // the error estimate is pessimistic; 1e-12 still resolves smooth cells to roundoff
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12);
}

// Second-order derivative of node samples on a uniform grid, one-sided at both ends.
std::vector<double> differentiate(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

void finish(InitialData& data, const std::vector<double>& nodal_etax) {
  const int N = data.N;
  const double h = 1.0 / N;
  double lo = 1.0, hi = 1.0;
  for (int i = 1; i <= N + 1; ++i) {
    const double J = 1.0 + (data.displacement[static_cast<std::size_t>(i)] -
                            data.displacement[static_cast<std::size_t>(i - 1)]) / h;
    lo = std::min(lo, J);
    hi = std::max(hi, J);
  }
  for (double J : nodal_etax) {
    lo = std::min(lo, J);
    hi = std::max(hi, J);
  }
  if (!(lo > 0.0)) throw std::invalid_argument("delta: amplitude makes eta0x nonpositive");
  data.min_etax = lo;
  data.max_etax = hi;
  data.D0 = std::max(hi, 1.0 / lo);
}

}  // namespace

FamilyKind parse_family_kind(const std::string& name) {
  if (name == "equilibrium") return FamilyKind::equilibrium;
  if (name == "ill_prepared") return FamilyKind::ill_prepared;
  if (name == "well_prepared") return FamilyKind::well_prepared;
  if (name == "from_density") return FamilyKind::from_density;
  throw std::invalid_argument("kind: unknown data family '" + name + "'");
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::equilibrium: return "equilibrium";
    case FamilyKind::ill_prepared: return "ill_prepared";
    case FamilyKind::well_prepared: return "well_prepared";
    case FamilyKind::from_density: return "from_density";
  }
  return "equilibrium";
}

ShapeKind parse_shape_kind(const std::string& name) {
  if (name == "standard") return ShapeKind::standard;
  if (name == "compression") return ShapeKind::compression;
  if (name == "velocity") return ShapeKind::velocity;
  throw std::invalid_argument("shape: unknown shape '" + name + "'");
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::standard: return "standard";
    case ShapeKind::compression: return "compression";
    case ShapeKind::velocity: return "velocity";
  }
  return "standard";
}

double shape_phi(ShapeKind shape, double x) {
  if (shape == ShapeKind::velocity) return 0.0;
  return std::cos(std::numbers::pi * x) * (1.0 - x) * (1.0 - x);
}

double shape_phi_integral(ShapeKind shape, double x) {
  if (shape == ShapeKind::velocity || x == 0.0) return 0.0;
  return integrate([shape](double y) { return shape_phi(shape, y); }, 0.0, x);
}

double shape_psi(ShapeKind shape, double x) {
  if (shape == ShapeKind::compression) return 0.0;
  // psi'' ~ (1-x)^4 keeps psi''/rho_bar square integrable for gamma > 1.23
  return 1.0 - std::pow(1.0 - x, 6);
}

LagrangianState InitialData::to_state() const {
  return build_state_from_samples(N, displacement, velocity);
}

InitialData equilibrium_data(const SteadyProfile& /*profile*/, int N) {
  if (N < 4) throw std::invalid_argument("N: N must be at least 4");
  InitialData d;
  d.N = N;
  d.displacement.assign(static_cast<std::size_t>(N + 2), 0.0);
  d.velocity.assign(static_cast<std::size_t>(N + 1), 0.0);
  return d;
}

InitialData perturbed_data(const SteadyProfile& profile, int N, const DataFamily& family,
                           double epsilon) {
  if (!std::isfinite(family.delta)) throw std::invalid_argument("delta: must be finite");
  double p = family.epsilon_power;
  if (p < 0.0) p = family.kind == FamilyKind::well_prepared ? 2.0 : 0.0;
  InitialData d = equilibrium_data(profile, N);
  const double a = family.delta * std::pow(epsilon, p);
  d.amplitude = a;
  if (a == 0.0) return d;
  const double h = 1.0 / N;
  std::vector<double> nodal(static_cast<std::size_t>(N + 2));
  // Cumulative integral of phi, built cell by cell.
  double acc = 0.0;
  for (int i = 0; i <= N + 1; ++i) {
    const double x = i * h;
    if (i > 0) {
      acc += integrate([&](double y) { return shape_phi(family.shape, y); }, (i - 1) * h, x);
    }
    d.displacement[static_cast<std::size_t>(i)] = a * acc;
    nodal[static_cast<std::size_t>(i)] = 1.0 + a * shape_phi(family.shape, x);
    if (i <= N) d.velocity[static_cast<std::size_t>(i)] = a * shape_psi(family.shape, x);
  }
  d.velocity[0] = 0.0;
  finish(d, nodal);
  return d;
}

InitialData diffeomorphism_from_density(const std::function<double(double)>& rho0, double l0,
                                        const SteadyProfile& profile, int N) {
  if (!(l0 > 0.0)) throw std::invalid_argument("l0: must be positive");
  InitialData d = equilibrium_data(profile, N);
  const double M = profile.mass();
  const double total = integrate(rho0, 0.0, l0);
  if (!(std::abs(total - M) <= 1e-8 * M)) {
    throw std::invalid_argument("rho0: total mass " + std::to_string(total) +
                                " differs from the steady mass " + std::to_string(M));
  }
  const double gamma = profile.gamma();
  const double k = profile.g() * (gamma - 1.0) / gamma;
  const double h = 1.0 / N;
  // Cumulative mass of rho0, anchored at the previous root to keep each
  // quadrature short.
  double prev_eta = 0.0, prev_mass = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double dist = static_cast<double>(N - i) / N * profile.l_bar();
    const double target = M - std::pow(k * dist, gamma / (gamma - 1.0)) / profile.g();
    double eta;
    if (i == N) {
      eta = l0;
    } else {
      auto f = [&](double y) { return prev_mass + integrate(rho0, prev_eta, y) - target; };
      const double fa = f(prev_eta), fb = f(l0);
      if (!(fa < 0.0 && fb > 0.0)) {
        if (fa == 0.0) {
          throw std::invalid_argument("rho0: cumulative mass is not increasing");
        }
        throw std::invalid_argument("rho0: cumulative mass does not bracket node " +
                                    std::to_string(i));
      }
      boost::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(
          f, prev_eta, l0, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      eta = 0.5 * (r.first + r.second);
    }
    if (!(eta > prev_eta)) throw std::invalid_argument("rho0: cumulative mass is not increasing");
    prev_mass += integrate(rho0, prev_eta, eta);
    prev_eta = eta;
    d.displacement[static_cast<std::size_t>(i)] = eta - i * h;
  }
  // Ghost by cubic extrapolation: zero third difference at the last node.
  auto xi = [&](int i) { return d.displacement[static_cast<std::size_t>(i)]; };
  d.displacement[static_cast<std::size_t>(N + 1)] = 3.0 * xi(N) - 3.0 * xi(N - 1) + xi(N - 2);
  finish(d, {});
  return d;
}

InitialData make_initial_data(const SteadyProfile& profile, int N, const DataFamily& family,
                              double epsilon) {
  switch (family.kind) {
    case FamilyKind::equilibrium: return equilibrium_data(profile, N);
    case FamilyKind::ill_prepared:
    case FamilyKind::well_prepared: return perturbed_data(profile, N, family, epsilon);
    case FamilyKind::from_density:
      if (!family.rho0) throw std::invalid_argument("rho0: from_density needs a density profile");
      return diffeomorphism_from_density(family.rho0, family.l0, profile, N);
  }
  return equilibrium_data(profile, N);
}

namespace {

struct NodalFields {
  std::vector<double> s;    // eta0x - 1 at nodes 0..N
  std::vector<double> v0x;  // nodes 0..N
  std::vector<double> rho;  // rho_bar at nodes 0..N
  std::vector<double> rho_gm1;
};

NodalFields nodal_fields(const InitialData& data, const SteadyProfile& profile) {
  const int N = data.N;
  const double h = 1.0 / N;
  NodalFields f;
  std::vector<double> xi(data.displacement.begin(), data.displacement.begin() + N + 1);
  f.s.resize(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= N; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (i == 0) {
      f.s[k] = (-3.0 * xi[0] + 4.0 * xi[1] - xi[2]) / (2.0 * h);
    } else {
      f.s[k] = (data.displacement[k + 1] - data.displacement[k - 1]) / (2.0 * h);
    }
  }
  f.v0x = differentiate(data.velocity, h);
  f.rho.resize(static_cast<std::size_t>(N + 1));
  f.rho_gm1.resize(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= N; ++i) {
    const double dist = static_cast<double>(N - i) / N * profile.l_bar();
    f.rho[static_cast<std::size_t>(i)] = profile.density_from_distance(dist);
    f.rho_gm1[static_cast<std::size_t>(i)] =
        profile.density_power_from_distance(dist, profile.gamma() - 1.0);
  }
  return f;
}

}  // namespace

CompatibilityReport compatibility_h1(const InitialData& data, const SteadyProfile& profile,
                                     const Params& params, double tolerance) {
  const int N = data.N;
  const double h = 1.0 / N;
  const double inv_eps2 = 1.0 / (params.epsilon * params.epsilon);
  const PolytropicLaw law(profile.gamma());
  const NodalFields f = nodal_fields(data, profile);

  std::vector<double> q(static_cast<std::size_t>(N + 1)), b(static_cast<std::size_t>(N + 1));
  for (std::size_t k = 0; k <= static_cast<std::size_t>(N); ++k) {
    q[k] = f.v0x[k] / (1.0 + f.s[k]);
    b[k] = law.bracket(f.s[k]);
  }
  const auto qx = differentiate(q, h);
  const auto bx = differentiate(b, h);

  CompatibilityReport r;
  r.tolerance = tolerance;
  for (int i = 0; i <= N; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (f.rho[k] < kDensityFloor) {
      ++r.excluded_nodes;
      continue;
    }
    r.x.push_back(i * h);
    r.h1.push_back(qx[k] / f.rho[k] - inv_eps2 * (-profile.g() * b[k] + f.rho_gm1[k] * bx[k]));
  }
  const std::size_t n = r.h1.size();
  r.residual_h1_at_0 = std::abs(r.h1.front());
  if (n >= 3) {
    r.residual_h1x_at_1 =
        std::abs(1.5 * r.h1[n - 3] - 4.0 * r.h1[n - 2] + 2.5 * r.h1[n - 1]) / h;
  }
  r.residual_v0_at_0 = std::abs(data.velocity.front());
  r.residual_v0x_at_1 = std::abs(f.v0x.back());
  r.h1_at_0_ok = r.residual_h1_at_0 <= tolerance;
  r.h1x_at_1_ok = r.residual_h1x_at_1 <= tolerance;
  r.v0_at_0_ok = r.residual_v0_at_0 <= tolerance;
  r.v0x_at_1_ok = r.residual_v0x_at_1 <= tolerance;
  return r;
}

void compatibility_h2(const InitialData& data, CompatibilityReport& report,
                      const SteadyProfile& profile, const Params& params) {
  const int N = data.N;
  const double h = 1.0 / N;
  const double gamma = profile.gamma();
  const double inv_eps2 = 1.0 / (params.epsilon * params.epsilon);
  const PolytropicLaw law(gamma);
  const NodalFields f = nodal_fields(data, profile);
  const std::size_t n = report.h1.size();  // nodes 0..n-1

  std::vector<double> r(static_cast<std::size_t>(N + 1));
  for (std::size_t k = 0; k <= static_cast<std::size_t>(N); ++k) {
    r[k] = f.v0x[k] * law.power(f.s[k]) / (1.0 + f.s[k]);
  }
  const auto rx = differentiate(r, h);
  const auto h1x = differentiate(report.h1, h);
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double J = 1.0 + f.s[k];
    u[k] = (J * h1x[k] - f.v0x[k] * f.v0x[k]) / (J * J);
  }
  const auto ux = differentiate(u, h);
  report.h2.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    report.h2[k] = gamma * inv_eps2 * (-profile.g() * r[k] + f.rho_gm1[k] * rx[k]) + ux[k] / f.rho[k];
  }
}

CompatibilityReport compatibility(const InitialData& data, const SteadyProfile& profile,
                                  const Params& params, double tolerance) {
  CompatibilityReport r = compatibility_h1(data, profile, params, tolerance);
  compatibility_h2(data, r, profile, params);
  return r;
}

}  // namespace vfbns
