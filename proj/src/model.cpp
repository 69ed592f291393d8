#include "vfbns/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vfbns {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

}  // namespace

void Params::validate() const {
  require(std::isfinite(gamma) && gamma > 1.0, "gamma", "gamma must exceed 1");
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0, "epsilon",
          "epsilon must lie in (0,1]");
  require(std::isfinite(g) && g > 0.0, "g", "g must be positive");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha", "alpha must be positive");
  require(N >= 4, "N", "N must be at least 4");
  // Values above 1 are accepted: they deliberately violate the stability bound.
  require(std::isfinite(dt_safety) && dt_safety > 0.0, "dt_safety",
          "dt_safety must be positive");
  require(std::isfinite(t_end) && t_end >= 0.0, "t_end", "t_end must be nonnegative");
}

SteadyProfile::SteadyProfile(double gamma, double g, double l_bar)
    : gamma_(gamma), g_(g), l_bar_(l_bar), slope_(g * (gamma - 1.0) / gamma) {
  if (!(gamma > 1.0) || !(g > 0.0) || !(l_bar > 0.0)) {
    throw std::invalid_argument("SteadyProfile: need gamma > 1, g > 0, l_bar > 0");
  }
  mass_ = steady_mass(gamma, g, l_bar);
}

double SteadyProfile::density(double x) const {
  return density_from_distance(l_bar_ - x);
}

double SteadyProfile::density_from_distance(double d) const {
  if (d <= 0.0) return 0.0;
  return std::pow(slope_ * d, 1.0 / (gamma_ - 1.0));
}

double SteadyProfile::density_power_from_distance(double d, double p) const {
  if (p == 0.0) return 1.0;
  if (d <= 0.0) {
    return p > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::pow(slope_ * d, p / (gamma_ - 1.0));
}

double steady_density(const SteadyProfile& profile, double x) {
  return profile.density(x);
}

double steady_mass(double gamma, double g, double l_bar) {
  return std::pow(l_bar * (gamma - 1.0) * g / gamma, gamma / (gamma - 1.0)) / g;
}

double domain_length(double gamma, double g, double mass) {
  return gamma / ((gamma - 1.0) * g) * std::pow(mass * g, (gamma - 1.0) / gamma);
}

NormalizedModel normalize(const Params& params) {
  params.validate();
  Params p = params;
  p.g = 1.0;
  return NormalizedModel{p, SteadyProfile(p.gamma, 1.0, 1.0)};
}

}  // namespace vfbns
