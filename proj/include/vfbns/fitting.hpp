#pragma once

#include <span>

namespace vfbns {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual
  int samples = 0;
};

/// Ordinary least squares y = intercept + slope x; needs at least 2 points.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of log y against log x. Needs at least 3 points with x, y > 0.
LinearFit power_law_fit(std::span<const double> x, std::span<const double> y);

struct DecayFit {
  LinearFit fit;
  int excluded = 0;  // nonpositive q inside the window
};

/// Slope of log q against log(1+t) over samples with t_a <= t <= t_b.
/// Throws std::invalid_argument with fewer than 10 usable samples.
DecayFit decay_fit(std::span<const double> t, std::span<const double> q, double t_a, double t_b);

}  // namespace vfbns
