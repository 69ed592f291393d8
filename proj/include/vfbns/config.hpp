#pragma once

#include <string>
#include <vector>

#include "vfbns/initial_data.hpp"
#include "vfbns/integrators.hpp"
#include "vfbns/model.hpp"

namespace vfbns {

enum class ExperimentKind { run, sweep_eps, sweep_mesh };

ExperimentKind parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);

/// Everything a run or sweep needs. Text form: flat "key = value" lines,
/// optional [section] headers, '#' comments.
struct Config {
  Params params;

  // [data]
  FamilyKind kind = FamilyKind::equilibrium;
  double delta = 0.0;
  ShapeKind shape = ShapeKind::standard;
  double epsilon_power = -1.0;   // < 0: family default
  std::string density = "steady";  // from_density: steady | quadratic_map
  double mass = 0.0;             // optional physical mass, > 0 to convert

  // [time]
  IntegratorMode integrator = IntegratorMode::imex;
  double dt_max = 1e-2;
  double dt_min = 1e-15;
  double fixed_dt = 0.0;
  int samples = 50;

  // [experiment]
  ExperimentKind experiment = ExperimentKind::run;
  std::vector<double> eps_list;
  std::vector<int> mesh_list;
  double fit_t_a = 1.0;
  double compat_tol = 1e-6;
  double energy_tol = 1e-6;       // explicit reference integrator
  double energy_tol_imex = 5e-2;  // first-order IMEX integrator, informational
  double rate_min = 1.7;
  double rate_max = 2.3;

  // [output]
  std::string output = "out";

  bool operator==(const Config&) const = default;

  StepPolicy policy() const;
  DataFamily family() const;
  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
};

/// Parses and validates.
Config parse_config(const std::string& text);
/// Parses without the cross-field checks, so command-line overrides can be
/// applied before validate().
Config parse_config_unchecked(const std::string& text);
Config load_config(const std::string& path);

/// Canonical text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const Config& c);

std::vector<double> parse_double_list(const std::string& key, const std::string& text);
std::vector<int> parse_int_list(const std::string& key, const std::string& text);

}  // namespace vfbns
