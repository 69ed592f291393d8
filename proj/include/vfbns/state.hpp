#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace vfbns {

class SteadyProfile;

/// Raised when a cell width eta^i - eta^{i-1} drops to or below
/// kMinCellWidth, or a state value becomes non-finite.
class JacobianCollapse : public std::runtime_error {
 public:
  JacobianCollapse(const std::string& what, int cell, double t)
      : std::runtime_error(what), cell_(cell), time_(t) {}
  int cell() const { return cell_; }
  double time() const { return time_; }

 private:
  int cell_;
  double time_;
};

inline constexpr double kMinCellWidth = 1e-12;

/// Node values (eta^i, v^i), i = -1..N+1, on the uniform mass grid x_i = i h.
///
/// Positions are stored as displacements xi^i = eta^i - x_i, so the
/// hydrostatic state is represented by exact zeros. Only the interior nodes
/// 1..N-1 are unknowns; impose_boundary() refreshes the rest:
///   v^0 = 0, v^N = v^{N-1}, v^{-1} = 0, v^{N+1} = v^N,
///   eta^0 = 0, eta^{-1} = 0,
///   eta^N - eta^{N-1} and eta^{N+1} - eta^N frozen at their initial values.
class LagrangianState {
 public:
  /// Hydrostatic equilibrium on N cells.
  explicit LagrangianState(int N);

  int cells() const { return N_; }
  double h() const { return h_; }
  double node(int i) const { return i * h_; }

  double eta(int i) const { return node(i) + displacement(i); }
  double displacement(int i) const { return xi_[static_cast<std::size_t>(i + 1)]; }
  double v(int i) const { return v_[static_cast<std::size_t>(i + 1)]; }

  /// (eta^i - eta^{i-1})/h - 1 for i = 1..N+1; exact zero at equilibrium.
  double stretch(int i) const;
  double jacobian(int i) const { return 1.0 + stretch(i); }
  double cell_width(int i) const { return h_ * jacobian(i); }

  /// Interior unknowns, nodes 1..N-1.
  std::span<double> interior_displacement() { return {xi_.data() + 2, static_cast<std::size_t>(N_ - 1)}; }
  std::span<double> interior_velocity() { return {v_.data() + 2, static_cast<std::size_t>(N_ - 1)}; }
  std::span<const double> interior_displacement() const { return {xi_.data() + 2, static_cast<std::size_t>(N_ - 1)}; }
  std::span<const double> interior_velocity() const { return {v_.data() + 2, static_cast<std::size_t>(N_ - 1)}; }

  /// Raw node arrays, p[i] for i = -1..N+1.
  const double* displacement_data() const { return xi_.data() + 1; }
  const double* velocity_data() const { return v_.data() + 1; }

  /// Frozen increments (eta^N - eta^{N-1}) - h and (eta^{N+1} - eta^N) - h.
  double last_cell_offset() const { return last_offset_; }
  double ghost_cell_offset() const { return ghost_offset_; }

  void set_frozen_offsets(double last_offset, double ghost_offset);
  void impose_boundary();

  /// Throws JacobianCollapse if any cell 1..N is too thin or any value is not finite.
  void check_jacobian() const;

  double t = 0.0;

  bool operator==(const LagrangianState&) const = default;

 private:
  int N_;
  double h_;
  std::vector<double> xi_;  // index i+1
  std::vector<double> v_;   // index i+1
  double last_offset_ = 0.0;
  double ghost_offset_ = 0.0;
};

/// Samples eta0, v0 at x_i = i h. eta0 is also evaluated at the ghost node
/// x_{N+1} = 1 + h to fix the frozen ghost increment. Throws
/// std::invalid_argument if eta0(0) != 0, v0(0) != 0 or eta0 is not strictly
/// increasing on the grid.
LagrangianState build_state(const SteadyProfile& profile, int N,
                            const std::function<double(double)>& eta0,
                            const std::function<double(double)>& v0);

/// Same, from displacement samples xi_i = eta0(x_i) - x_i for i = 0..N+1 and
/// velocity samples for i = 0..N.
LagrangianState build_state_from_samples(int N, std::span<const double> displacement,
                                         std::span<const double> velocity);

}  // namespace vfbns
