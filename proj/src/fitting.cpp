#include "vfbns/fitting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfbns {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit: abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = y[k] - (f.intercept + f.slope * x[k]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / static_cast<double>(n));
  f.samples = static_cast<int>(n);
  return f;
}

LinearFit power_law_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit: need at least 3 axis points");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw std::invalid_argument("fit: values must be positive");
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(y[k]));
  }
  return least_squares(lx, ly);
}

DecayFit decay_fit(std::span<const double> t, std::span<const double> q, double t_a, double t_b) {
  if (t.size() != q.size()) throw std::invalid_argument("decay_fit: size mismatch");
  DecayFit out;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_a || t[k] > t_b) continue;
    if (!(q[k] > 0.0)) {
      ++out.excluded;
      continue;
    }
    lx.push_back(std::log1p(t[k]));
    ly.push_back(std::log(q[k]));
  }
  if (lx.size() < 10) {
    throw std::invalid_argument("decay_fit: need at least 10 samples in the window, got " +
                                std::to_string(lx.size()));
  }
  out.fit = least_squares(lx, ly);
  return out;
}

}  // namespace vfbns
