#include "vfbns/state.hpp"

#include <cmath>
#include <string>

#include "vfbns/model.hpp"

namespace vfbns {

LagrangianState::LagrangianState(int N)
    : N_(N), h_(1.0 / N), xi_(static_cast<std::size_t>(N + 3), 0.0),
      v_(static_cast<std::size_t>(N + 3), 0.0) {
  if (N < 4) throw std::invalid_argument("N: N must be at least 4");
  impose_boundary();
}

double LagrangianState::stretch(int i) const {
  if (i == N_) return last_offset_ / h_;
  if (i == N_ + 1) return ghost_offset_ / h_;
  return (displacement(i) - displacement(i - 1)) / h_;
}

void LagrangianState::set_frozen_offsets(double last_offset, double ghost_offset) {
  last_offset_ = last_offset;
  ghost_offset_ = ghost_offset;
  impose_boundary();
}

void LagrangianState::impose_boundary() {
  auto at = [](std::vector<double>& a, int i) -> double& {
    return a[static_cast<std::size_t>(i + 1)];
  };
  at(xi_, -1) = h_;  // eta^{-1} = x_{-1} + h = 0
  at(xi_, 0) = 0.0;
  at(xi_, N_) = at(xi_, N_ - 1) + last_offset_;
  at(xi_, N_ + 1) = at(xi_, N_) + ghost_offset_;
  at(v_, -1) = 0.0;
  at(v_, 0) = 0.0;
  at(v_, N_) = at(v_, N_ - 1);
  at(v_, N_ + 1) = at(v_, N_);
}

void LagrangianState::check_jacobian() const {
  for (int i = 1; i <= N_; ++i) {
    const double w = cell_width(i);
    if (!std::isfinite(w) || w <= kMinCellWidth || !std::isfinite(v(i))) {
      throw JacobianCollapse("Jacobian collapse in cell " + std::to_string(i) +
                                 " at t=" + std::to_string(t) +
                                 " (width " + std::to_string(w) + ")",
                             i, t);
    }
  }
}

LagrangianState build_state_from_samples(int N, std::span<const double> displacement,
                                         std::span<const double> velocity) {
  if (displacement.size() != static_cast<std::size_t>(N + 2) ||
      velocity.size() != static_cast<std::size_t>(N + 1)) {
    throw std::invalid_argument("build_state: expected N+2 displacement and N+1 velocity samples");
  }
  if (displacement[0] != 0.0) throw std::invalid_argument("eta0: eta0(0) must be 0");
  if (velocity[0] != 0.0) throw std::invalid_argument("v0: v0(0) must be 0");
  LagrangianState s(N);
  const double h = s.h();
  for (int i = 1; i <= N + 1; ++i) {
    const double width = h + (displacement[static_cast<std::size_t>(i)] -
                              displacement[static_cast<std::size_t>(i - 1)]);
    if (!(width > 0.0)) {
      throw std::invalid_argument("eta0: not strictly increasing at node " + std::to_string(i) +
                                  " (Jacobian positivity violated)");
    }
  }
  auto xi = s.interior_displacement();
  auto v = s.interior_velocity();
  for (int i = 1; i <= N - 1; ++i) {
    xi[static_cast<std::size_t>(i - 1)] = displacement[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(i - 1)] = velocity[static_cast<std::size_t>(i)];
  }
  s.set_frozen_offsets(displacement[static_cast<std::size_t>(N)] - displacement[static_cast<std::size_t>(N - 1)],
                       displacement[static_cast<std::size_t>(N + 1)] - displacement[static_cast<std::size_t>(N)]);
  return s;
}

LagrangianState build_state(const SteadyProfile& /*profile*/, int N,
                            const std::function<double(double)>& eta0,
                            const std::function<double(double)>& v0) {
  const double h = 1.0 / N;
  std::vector<double> xi(static_cast<std::size_t>(N + 2));
  std::vector<double> vel(static_cast<std::size_t>(N + 1));
  for (int i = 0; i <= N + 1; ++i) {
    const double x = i * h;
    xi[static_cast<std::size_t>(i)] = eta0(x) - x;
    if (i <= N) vel[static_cast<std::size_t>(i)] = v0(x);
  }
  return build_state_from_samples(N, xi, vel);
}

}  // namespace vfbns
