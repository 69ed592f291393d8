#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vfbns/model.hpp"
#include "vfbns/state.hpp"

namespace vfbns {

enum class FamilyKind { equilibrium, ill_prepared, well_prepared, from_density };

/// Perturbation shapes: eta0x = 1 + a phi, v0 = a psi.
///   standard:    phi = cos(pi x)(1-x)^2, psi = 1 - (1-x)^6
///   compression: phi as above, psi = 0
///   velocity:    phi = 0, psi as above
enum class ShapeKind { standard, compression, velocity };

struct DataFamily {
  FamilyKind kind = FamilyKind::equilibrium;
  double delta = 0.0;
  ShapeKind shape = ShapeKind::standard;
  /// Amplitude a = delta * epsilon^p. Negative selects the family default:
  /// p = 0 for ill_prepared, p = 2 for well_prepared.
  double epsilon_power = -1.0;
  /// from_density only: rho0 on [0, l0] with the steady mass.
  std::function<double(double)> rho0;
  double l0 = 1.0;
};

FamilyKind parse_family_kind(const std::string& name);
std::string to_string(FamilyKind kind);
ShapeKind parse_shape_kind(const std::string& name);
std::string to_string(ShapeKind kind);

double shape_phi(ShapeKind shape, double x);
double shape_phi_integral(ShapeKind shape, double x);  // int_0^x phi
double shape_psi(ShapeKind shape, double x);

/// Samples of the initial data on the grid x_i = i h.
struct InitialData {
  int N = 0;
  std::vector<double> displacement;  // eta0(x_i) - x_i, i = 0..N+1
  std::vector<double> velocity;      // v0(x_i), i = 0..N (raw, before v^N = v^{N-1})
  double amplitude = 0.0;
  double D0 = 1.0;                   // max over grid of eta0x and 1/eta0x
  double min_etax = 1.0;
  double max_etax = 1.0;

  double eta(int i) const { return i / static_cast<double>(N) + displacement[static_cast<std::size_t>(i)]; }
  LagrangianState to_state() const;
};

InitialData equilibrium_data(const SteadyProfile& profile, int N);

/// Throws std::invalid_argument when the amplitude makes eta0x <= 0.
InitialData perturbed_data(const SteadyProfile& profile, int N, const DataFamily& family,
                           double epsilon);

/// Solves int_0^{eta0(x)} rho0 = int_0^x rho_bar node by node. Throws
/// std::invalid_argument on a mass mismatch (relative 1e-8) or when the
/// cumulative mass of rho0 is not increasing.
InitialData diffeomorphism_from_density(const std::function<double(double)>& rho0, double l0,
                                        const SteadyProfile& profile, int N);

/// Dispatch on family.kind.
InitialData make_initial_data(const SteadyProfile& profile, int N, const DataFamily& family,
                              double epsilon);

struct CompatibilityReport {
  std::vector<double> x;   // sample nodes (rho_bar above the floor)
  std::vector<double> h1;
  std::vector<double> h2;
  int excluded_nodes = 0;  // nodes with rho_bar below the floor
  double residual_h1_at_0 = 0.0;
  double residual_h1x_at_1 = 0.0;
  double residual_v0_at_0 = 0.0;
  double residual_v0x_at_1 = 0.0;
  double tolerance = 1e-6;
  bool h1_at_0_ok = true;
  bool h1x_at_1_ok = true;
  bool v0_at_0_ok = true;
  bool v0x_at_1_ok = true;

  bool all_ok() const { return h1_at_0_ok && h1x_at_1_ok && v0_at_0_ok && v0x_at_1_ok; }
};

inline constexpr double kDensityFloor = 1e-12;

/// h1 from rho_bar h1 = (v0x/eta0x)_x - (1/eps^2)[(rho_bar^gamma/eta0x^gamma)_x + rho_bar g],
/// evaluated through the hydrostatic identity (rho_bar^gamma)_x = -rho_bar g so
/// that equilibrium data give exact zeros. Derivatives are second-order
/// differences of the samples, one-sided at the ends.
CompatibilityReport compatibility_h1(const InitialData& data, const SteadyProfile& profile,
                                     const Params& params, double tolerance = 1e-6);

/// Fills report.h2 from report.h1.
void compatibility_h2(const InitialData& data, CompatibilityReport& report,
                      const SteadyProfile& profile, const Params& params);

CompatibilityReport compatibility(const InitialData& data, const SteadyProfile& profile,
                                  const Params& params, double tolerance = 1e-6);

}  // namespace vfbns
