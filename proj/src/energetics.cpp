#include "vfbns/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vfbns/fitting.hpp"

namespace vfbns {

namespace {

inline std::size_t ix(int i) { return static_cast<std::size_t>(i); }

}  // namespace

const std::vector<std::string>& DiagnosticsRecord::csv_columns() {
  static const std::vector<std::string> cols = {"t",        "E",        "D",    "EN",
                                                "EL",       "EH",       "EL_tilde",
                                                "min_etax", "max_etax", "qbar", "gamma_fb",
                                                "mass"};
  return cols;
}

std::vector<double> DiagnosticsRecord::csv_values() const {
  return {t, E, D, EN, EL, EH, EL_tilde, min_etax, max_etax, qbar, gamma_fb, mass};
}

Energetics::Energetics(const SteadyProfile& profile, const Params& params)
    : scheme_(profile, params), alpha_(params.alpha) {
  const int N = params.N;
  const double gamma = profile.gamma();
  const double l = profile.l_bar();
  node_w_curv_.assign(ix(N + 1), 0.0);
  for (int i = 0; i <= N; ++i) {
    node_w_curv_[ix(i)] =
        profile.density_power_from_distance(static_cast<double>(N - i) / N * l, gamma - 1.0 + alpha_);
  }
  mid_rho_.assign(ix(N + 1), 0.0);
  mid_w_stretch_.assign(ix(N + 1), 0.0);
  mid_w_gamma_.assign(ix(N + 1), 0.0);
  mid_w_third_.assign(ix(N + 1), 0.0);
  for (int i = 1; i <= N; ++i) {
    const double d = (N - i + 0.5) / N * l;
    mid_rho_[ix(i)] = profile.density_from_distance(d);
    mid_w_stretch_[ix(i)] = profile.density_power_from_distance(d, 1.0 - gamma + alpha_);
    mid_w_gamma_[ix(i)] = profile.density_power_from_distance(d, gamma);
    mid_w_third_[ix(i)] = profile.density_power_from_distance(d, 3.0 * gamma - 3.0 + alpha_);
  }
}

double Energetics::basic_energy(const LagrangianState& s) const {
  const int N = s.cells();
  const double inv_eps2 = 1.0 / (scheme_.epsilon() * scheme_.epsilon());
  const PolytropicLaw& law = scheme_.law();
  double e = 0.0;
  for (int i = 1; i < N; ++i) {
    e += 0.5 * scheme_.rho(i) * s.v(i) * s.v(i) +
         inv_eps2 * scheme_.rho_gamma(i) * law.potential(s.stretch(i));
  }
  return e * s.h();
}

StepMonitor Energetics::step_monitor(const LagrangianState& s) const {
  const int N = s.cells();
  const double h = s.h();
  const double inv_h = 1.0 / h;
  const double inv_eps2 = 1.0 / (scheme_.epsilon() * scheme_.epsilon());
  const PolytropicLaw& law = scheme_.law();
  const double* xi = s.displacement_data();
  const double* v = s.velocity_data();
  StepMonitor m;
  double e = 0.0, v2 = 0.0;
  double jmin = s.jacobian(N), jmax = jmin;
  double vmax = std::abs(v[N]);
  double dmax = std::max(std::abs(xi[N]), std::abs(xi[N + 1]));
  for (int i = 1; i < N; ++i) {
    const double q = (xi[i] - xi[i - 1]) * inv_h;
    e += 0.5 * scheme_.rho(i) * v[i] * v[i] + inv_eps2 * scheme_.rho_gamma(i) * law.potential(q);
    v2 += v[i] * v[i];
    jmin = std::min(jmin, 1.0 + q);
    jmax = std::max(jmax, 1.0 + q);
    vmax = std::max(vmax, std::abs(v[i]));
    dmax = std::max(dmax, std::abs(xi[i]));
  }
  m.E = e * h;
  m.v_l2_sq = v2 * h;
  m.min_etax = jmin;
  m.max_etax = jmax;
  m.max_abs_v = vmax;
  m.max_abs_displacement = dmax;
  return m;
}

DerivativeStencils Energetics::derivatives(const LagrangianState& s) const {
  const int N = s.cells();
  const double h = s.h();
  const double gamma = scheme_.gamma();
  const double inv_eps2 = 1.0 / (scheme_.epsilon() * scheme_.epsilon());
  const PolytropicLaw& law = scheme_.law();
  DerivativeStencils d;
  d.vt.assign(ix(N + 1), 0.0);
  d.dissipation = scheme_.accelerations(s, d.vt);
  const auto& a = d.vt;

  // Time derivative of the cell fluxes, G^i = (W^i)' - (P^i)'/eps^2, cells 1..N.
  std::vector<double> G(ix(N + 2), 0.0);
  for (int i = 1; i < N; ++i) {
    const double w = s.cell_width(i);
    const double dv = s.v(i) - s.v(i - 1);
    const double dw = (a[ix(i)] - a[ix(i - 1)]) / w - dv * dv / (w * w);
    const double q = s.stretch(i);
    const double dp = -gamma * scheme_.rho_gamma(i) * law.power(q) / (1.0 + q) * dv / h;
    G[ix(i)] = dw - inv_eps2 * dp;
  }
  d.vtt.assign(ix(N + 1), 0.0);
  for (int i = 1; i < N; ++i) d.vtt[ix(i)] = (G[ix(i + 1)] - G[ix(i)]) / (scheme_.rho(i) * h);
  d.vtt[ix(N)] = d.vtt[ix(N - 1)];

  const double h2 = h * h, h3 = h2 * h;
  d.eta_xx.assign(ix(N + 1), 0.0);
  d.v_xx.assign(ix(N + 1), 0.0);
  for (int i = 1; i < N; ++i) {
    d.eta_xx[ix(i)] = (s.displacement(i + 1) - 2.0 * s.displacement(i) + s.displacement(i - 1)) / h2;
    d.v_xx[ix(i)] = (s.v(i + 1) - 2.0 * s.v(i) + s.v(i - 1)) / h2;
  }
  // The i = 1 pattern would reach the degenerate ghost eta^{-1} = eta^0.
  d.eta_xxx.assign(ix(N + 1), 0.0);
  d.v_xxx.assign(ix(N + 1), 0.0);
  for (int i = 2; i <= N; ++i) {
    d.eta_xxx[ix(i)] = (s.displacement(i + 1) - 3.0 * s.displacement(i) +
                        3.0 * s.displacement(i - 1) - s.displacement(i - 2)) / h3;
    d.v_xxx[ix(i)] = (s.v(i + 1) - 3.0 * s.v(i) + 3.0 * s.v(i - 1) - s.v(i - 2)) / h3;
  }
  return d;
}

double Energetics::discrete_energy_EN(const LagrangianState& s, const DerivativeStencils& d) const {
  const int N = s.cells();
  const double h = s.h();
  double mx = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double J = s.jacobian(i);
    const double dv = (s.v(i) - s.v(i - 1)) / h;
    mx = std::max(mx, J * J + 1.0 / (J * J) + dv * dv);
  }
  double sum = 0.0;
  for (int i = 1; i < N; ++i) {
    const auto k = ix(i);
    sum += scheme_.rho(i) * (s.v(i) * s.v(i) + d.vt[k] * d.vt[k] + d.vtt[k] * d.vtt[k]);
    sum += d.v_xx[k] * d.v_xx[k] + d.eta_xx[k] * d.eta_xx[k];
  }
  for (int i = 2; i <= N; ++i) {
    sum += d.v_xxx[ix(i)] * d.v_xxx[ix(i)] + d.eta_xxx[ix(i)] * d.eta_xxx[ix(i)];
  }
  return mx + h * sum;
}

LowEnergyParts Energetics::low_energy(const LagrangianState& s, const DerivativeStencils& d,
                                      double t) const {
  const int N = s.cells();
  const double h = s.h();
  const double gamma = scheme_.gamma();
  const double eps2 = scheme_.epsilon() * scheme_.epsilon();
  LowEnergyParts p;
  double kin = 0.0, curv = 0.0, curv_plain = 0.0, acc = 0.0;
  for (int i = 1; i < N; ++i) {
    const auto k = ix(i);
    kin += scheme_.rho(i) * s.v(i) * s.v(i);
    curv += node_w_curv_[k] * d.eta_xx[k] * d.eta_xx[k];
    curv_plain += d.eta_xx[k] * d.eta_xx[k];
    acc += scheme_.rho(i) * d.vt[k] * d.vt[k];
  }
  double str = 0.0, grad = 0.0, pres = 0.0;
  double jmax = 0.0, jinv = 0.0;
  for (int i = 1; i <= N; ++i) {
    const auto k = ix(i);
    const double q = s.stretch(i);
    const double vx = (s.v(i) - s.v(i - 1)) / h;
    str += mid_w_stretch_[k] * q * q;
    grad += vx * vx;
    pres += mid_w_gamma_[k] * q * q;
    jmax = std::max(jmax, 1.0 + q);
    jinv = std::max(jinv, 1.0 / (1.0 + q));
  }
  p.kinetic = kin * h;
  p.stretch_weighted = str * h;
  p.curvature_weighted = curv * h;
  p.velocity_gradient = eps2 * grad * h;
  p.curvature_timed = eps2 * std::pow(1.0 + t, -(gamma - 1.0) / gamma + alpha_) * curv_plain * h;
  p.acceleration = eps2 * eps2 * acc * h;
  p.pressure = pres * h / eps2;
  p.sup_etax = jmax;
  p.sup_inv_etax = jinv;
  return p;
}

HighEnergyParts Energetics::high_energy(const LagrangianState& s, const DerivativeStencils& d,
                                        double t) const {
  const int N = s.cells();
  const double h = s.h();
  const double gamma = scheme_.gamma();
  const double eps2 = scheme_.epsilon() * scheme_.epsilon();
  const double eps8 = eps2 * eps2 * eps2 * eps2;
  double acc = 0.0;
  for (int i = 1; i < N; ++i) acc += scheme_.rho(i) * d.vtt[ix(i)] * d.vtt[ix(i)];
  double third = 0.0, third_plain = 0.0;
  for (int i = 2; i <= N; ++i) {
    const double e = d.eta_xxx[ix(i)];
    third += mid_w_third_[ix(i)] * e * e;
    third_plain += e * e;
  }
  HighEnergyParts p;
  p.acceleration = eps8 * acc * h;
  p.third_weighted = eps2 * third * h;
  p.third_timed =
      eps8 * std::pow(1.0 + t, -(3.0 * gamma - 3.0 + alpha_) / gamma) * third_plain * h;
  return p;
}

double Energetics::well_prepared_energy(const LagrangianState& s, const DerivativeStencils& d) const {
  const int N = s.cells();
  const double h = s.h();
  const double eps2 = scheme_.epsilon() * scheme_.epsilon();
  const PolytropicLaw& law = scheme_.law();
  double low = 0.0, acc = 0.0;
  for (int i = 1; i < N; ++i) {
    low += scheme_.rho(i) * s.v(i) * s.v(i);
    acc += scheme_.rho(i) * d.vt[ix(i)] * d.vt[ix(i)];
  }
  double grad = 0.0, pot = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double q = s.stretch(i);
    const double vx = (s.v(i) - s.v(i - 1)) / h;
    low += mid_w_stretch_[ix(i)] * q * q;
    grad += vx * vx;
    pot += mid_w_gamma_[ix(i)] * law.potential(q);
  }
  return h * (low / (eps2 * eps2) + grad / eps2 + acc + pot / (eps2 * eps2 * eps2));
}

DiagnosticsRecord Energetics::record(const LagrangianState& s, double qbar) const {
  const int N = s.cells();
  const double h = s.h();
  const double eps2 = scheme_.epsilon() * scheme_.epsilon();
  const DerivativeStencils d = derivatives(s);
  const LowEnergyParts low = low_energy(s, d, s.t);
  DiagnosticsRecord r;
  r.t = s.t;
  r.E = basic_energy(s);
  r.D = d.dissipation;
  r.EN = discrete_energy_EN(s, d);
  r.EL = low.total();
  r.EH = high_energy(s, d, s.t).total();
  r.EL_tilde = well_prepared_energy(s, d);
  r.min_etax = s.jacobian(1);
  r.max_etax = s.jacobian(1);
  double l2 = 0.0, vx2 = 0.0, vtx = 0.0;
  for (int i = 1; i <= N; ++i) {
    const double J = s.jacobian(i);
    r.min_etax = std::min(r.min_etax, J);
    r.max_etax = std::max(r.max_etax, J);
    l2 += s.stretch(i) * s.stretch(i);
    const double vx = (s.v(i) - s.v(i - 1)) / h;
    vx2 += vx * vx;
    const double ax = (d.vt[ix(i)] - d.vt[ix(i - 1)]) / h;
    vtx = std::max(vtx, ax * ax);
  }
  double v2 = 0.0, acc2 = 0.0;
  for (int i = 1; i < N; ++i) {
    v2 += s.v(i) * s.v(i);
    acc2 += scheme_.rho(i) * d.vtt[ix(i)] * d.vtt[ix(i)];
  }
  for (int i = 0; i <= N + 1; ++i) {
    r.max_abs_v = std::max(r.max_abs_v, std::abs(s.v(i)));
    r.max_abs_displacement = std::max(r.max_abs_displacement, std::abs(s.displacement(i)));
  }
  const double eps4 = eps2 * eps2;
  r.qbar = qbar;
  r.gamma_fb = free_boundary(s);
  r.mass = eulerian_mass(s, scheme_.profile());
  r.group_velocity = low.acceleration + eps4 * vx2 * h;
  r.group_acceleration = eps4 * eps4 * (acc2 * h + vtx);
  r.etax_l2 = std::sqrt(l2 * h);
  r.v_l2 = std::sqrt(v2 * h);
  return r;
}

namespace {

Energetics make(const LagrangianState& state, const SteadyProfile& profile, const Params& params) {
  Params p = params;
  p.N = state.cells();
  return Energetics(profile, p);
}

}  // namespace

double basic_energy(const LagrangianState& state, const SteadyProfile& profile, const Params& params) {
  state.check_jacobian();
  return make(state, profile, params).basic_energy(state);
}

double dissipation(const LagrangianState& state) {
  state.check_jacobian();
  double d = 0.0;
  for (int i = 1; i < state.cells(); ++i) {
    const double dv = state.v(i) - state.v(i - 1);
    d += dv * dv / state.cell_width(i);
  }
  return d;
}

DerivativeStencils derivative_stencils(const LagrangianState& state, const SteadyProfile& profile,
                                       const Params& params) {
  state.check_jacobian();
  return make(state, profile, params).derivatives(state);
}

double discrete_energy_EN(const LagrangianState& state, const SteadyProfile& profile,
                          const Params& params) {
  const Energetics e = make(state, profile, params);
  return e.discrete_energy_EN(state, e.derivatives(state));
}

double low_energy_EL(const LagrangianState& state, const DerivativeStencils& d,
                     const SteadyProfile& profile, const Params& params, double t) {
  return make(state, profile, params).low_energy(state, d, t).total();
}

double high_energy_EH(const LagrangianState& state, const DerivativeStencils& d,
                      const SteadyProfile& profile, const Params& params, double t) {
  return make(state, profile, params).high_energy(state, d, t).total();
}

double well_prepared_energy(const LagrangianState& state, const DerivativeStencils& d,
                            const SteadyProfile& profile, const Params& params) {
  return make(state, profile, params).well_prepared_energy(state, d);
}

double qbar_bound(double D0, double M, double e0) {
  if (!(D0 >= 1.0) || !(M > 0.0) || !(e0 >= 0.0)) {
    throw std::invalid_argument("qbar_bound: need D0 >= 1, M > 0, e0 >= 0");
  }
  return D0 * D0 * std::exp(4.0 * std::sqrt(M * e0));
}

double measured_D0(const LagrangianState& state) {
  double d0 = 1.0;
  for (int i = 1; i <= state.cells(); ++i) {
    const double J = state.jacobian(i);
    d0 = std::max({d0, J, 1.0 / J});
  }
  return d0;
}

HardyResult hardy_ratio(std::span<const double> w, double beta, const SteadyProfile& profile) {
  const double gamma = profile.gamma();
  if (!(beta > -(gamma - 1.0))) throw std::invalid_argument("beta: beta must exceed -(gamma-1)");
  if (w.size() < 2) throw std::invalid_argument("hardy_ratio: need at least one cell");
  const int n = static_cast<int>(w.size()) - 1;
  const double h = 1.0 / n;
  const double l = profile.l_bar();
  double lhs = 0.0, rhs = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double d = (n - i + 0.5) / n * l;
    const double wm = 0.5 * (w[ix(i)] + w[ix(i - 1)]);
    const double wx = (w[ix(i)] - w[ix(i - 1)]) / (h * l);
    lhs += profile.density_power_from_distance(d, beta) * wm * wm;
    rhs += profile.density_power_from_distance(d, beta + 2.0 * (gamma - 1.0)) * wx * wx;
  }
  HardyResult r;
  r.lhs = lhs * h * l;
  r.rhs = rhs * h * l;
  r.ratio = r.lhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  return r;
}

HardyResult hardy_ratio(const std::function<double(double)>& w, int n, double beta,
                        const SteadyProfile& profile) {
  std::vector<double> samples(ix(n + 1));
  for (int i = 0; i <= n; ++i) samples[ix(i)] = w(profile.l_bar() * i / n);
  return hardy_ratio(samples, beta, profile);
}

DecayMonitor decay_monitor(std::span<const double> t, std::span<const double> q, double theta) {
  if (t.size() != q.size() || t.empty()) throw std::invalid_argument("decay_monitor: bad samples");
  DecayMonitor m;
  std::vector<double> weighted(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0 && !(t[k] > t[k - 1])) throw std::invalid_argument("decay_monitor: t must increase");
    weighted[k] = std::pow(1.0 + t[k], theta) * q[k];
    if (k == 0 || weighted[k] > m.sup) {
      m.sup = weighted[k];
      m.index = k;
    }
  }
  m.t_at_sup = t[m.index];
  const double half = t.front() + 0.5 * (t.back() - t.front());
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] >= half && weighted[k] > 0.0) {
      lx.push_back(std::log1p(t[k]));
      ly.push_back(std::log(weighted[k]));
    }
  }
  m.tail_samples = static_cast<int>(lx.size());
  if (lx.size() >= 2) m.tail_slope = least_squares(lx, ly).slope;
  return m;
}

}  // namespace vfbns
