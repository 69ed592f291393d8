#include "vfbns/scheme.hpp"

#include <cmath>

namespace vfbns {

Scheme::Scheme(const SteadyProfile& profile, const Params& params)
    : params_(params), profile_(profile), law_(profile.gamma()), N_(params.N),
      h_(1.0 / params.N), epsilon_(params.epsilon),
      rho_(static_cast<std::size_t>(N_ + 1)), rho_gamma_(static_cast<std::size_t>(N_ + 1)),
      inv_rho_h_(static_cast<std::size_t>(N_ + 1), 0.0),
      flux_(static_cast<std::size_t>(N_ + 2), 0.0) {
  for (int i = 0; i <= N_; ++i) {
    const double d = static_cast<double>(N_ - i) / N_ * profile.l_bar();
    const auto k = static_cast<std::size_t>(i);
    rho_[k] = profile.density_from_distance(d);
    rho_gamma_[k] = profile.density_power_from_distance(d, law_.gamma());
    if (i < N_) inv_rho_h_[k] = 1.0 / (rho_[k] * h_);
  }
}

namespace {

// flux[i] = W^i - P^i/eps^2 for cells 1..N-1. Cell N carries no flux:
// v^N = v^{N-1} and rho_bar^N = 0.
template <class Bracket>
double interior_fluxes(int N, double h, double inv_eps2, const double* xi, const double* v,
                       const double* rho_gamma, double* flux, Bracket bracket) {
  const double inv_h = 1.0 / h;
  double dissipation = 0.0;
  for (int i = 1; i < N; ++i) {
    const double s = (xi[i] - xi[i - 1]) * inv_h;
    const double dv = v[i] - v[i - 1];
    const double w = dv / (h + (xi[i] - xi[i - 1]));
    flux[i] = w - inv_eps2 * rho_gamma[i] * bracket(s);
    dissipation += dv * w;
  }
  flux[N] = 0.0;
  return dissipation;
}

}  // namespace

double Scheme::accelerations(const LagrangianState& s, std::span<double> accel) const {
  const int N = N_;
  const double inv_eps2 = 1.0 / (epsilon_ * epsilon_);
  const double* xi = s.displacement_data();
  const double* v = s.velocity_data();
  double* f = flux_.data();
  double dissipation;
  if (law_.integer_gamma() == 2) {
    dissipation = interior_fluxes(N, h_, inv_eps2, xi, v, rho_gamma_.data(), f, [](double q) {
      const double j = 1.0 + q;
      return -q * (2.0 + q) / (j * j);
    });
  } else {
    const PolytropicLaw& law = law_;
    dissipation = interior_fluxes(N, h_, inv_eps2, xi, v, rho_gamma_.data(), f,
                                  [&law](double q) { return law.bracket(q); });
  }
  double* a = accel.data();
  a[0] = 0.0;
  const double* c = inv_rho_h_.data();
  for (int i = 1; i < N; ++i) a[i] = (f[i + 1] - f[i]) * c[i];
  a[N] = a[N - 1];
  return dissipation;
}

double pressure_term(const LagrangianState& state, const SteadyProfile& profile,
                     const Params& params, int i) {
  if (i < 1 || i > state.cells() - 1) throw std::out_of_range("pressure_term: interior node expected");
  Params p = params;
  p.N = state.cells();
  const Scheme scheme(profile, p);
  const double value = (scheme.pressure_flux(state, i + 1) - scheme.pressure_flux(state, i)) / state.h();
  if (!std::isfinite(value)) {
    throw JacobianCollapse("pressure_term: non-finite value", i, state.t);
  }
  return value;
}

double viscous_term(const LagrangianState& state, int i) {
  if (i < 1 || i > state.cells() - 1) throw std::out_of_range("viscous_term: interior node expected");
  const double right = (state.v(i + 1) - state.v(i)) / state.cell_width(i + 1);
  const double left = (state.v(i) - state.v(i - 1)) / state.cell_width(i);
  const double value = (right - left) / state.h();
  if (!std::isfinite(value)) {
    throw JacobianCollapse("viscous_term: non-finite value", i, state.t);
  }
  return value;
}

double RhsVector::at(int i) const {
  const int N = cells();
  if (i <= 0) return 0.0;
  if (i >= N) return accel.back();
  return accel[static_cast<std::size_t>(i - 1)];
}

RhsVector rhs(const LagrangianState& state, const SteadyProfile& profile, const Params& params) {
  state.check_jacobian();
  Params p = params;
  p.N = state.cells();
  const Scheme scheme(profile, p);
  std::vector<double> a(static_cast<std::size_t>(p.N + 1));
  scheme.accelerations(state, a);
  RhsVector out;
  out.accel.assign(a.begin() + 1, a.end() - 1);
  for (std::size_t k = 0; k < out.accel.size(); ++k) {
    if (!std::isfinite(out.accel[k])) {
      throw JacobianCollapse("rhs: non-finite acceleration", static_cast<int>(k) + 1, state.t);
    }
  }
  return out;
}

std::vector<EulerianSample> eulerian_density(const LagrangianState& state,
                                             const SteadyProfile& profile) {
  state.check_jacobian();
  const int N = state.cells();
  const double h = state.h();
  std::vector<EulerianSample> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    const double width = state.cell_width(i);
    const double d_mid = (N - i + 0.5) / N * profile.l_bar();
    out.push_back({0.5 * (state.eta(i) + state.eta(i - 1)),
                   profile.density_from_distance(d_mid) * h / width, width});
  }
  return out;
}

double eulerian_mass(const LagrangianState& state, const SteadyProfile& profile) {
  double m = 0.0;
  for (const auto& c : eulerian_density(state, profile)) m += c.density * c.width;
  return m;
}

}  // namespace vfbns
