#include "vfbns/polytropic.hpp"

#include <cmath>

namespace vfbns {

PolytropicLaw::PolytropicLaw(double gamma) : gamma_(gamma), integer_gamma_(0) {
  const double r = std::round(gamma);
  if (r == gamma && r >= 2.0 && r <= 8.0) integer_gamma_ = static_cast<int>(r);
}

double PolytropicLaw::bracket(double s) const {
  const double j = 1.0 + s;
  switch (integer_gamma_) {
    case 2:
      return -s * (2.0 + s) / (j * j);
    case 3:
      return -s * (3.0 + s * (3.0 + s)) / (j * j * j);
    case 0:
      return std::expm1(-gamma_ * std::log1p(s));
    default: {
      // 1 - J^n = -s (1 + J + ... + J^{n-1})
      double sum = 0.0;
      double jk = 1.0;
      for (int k = 0; k < integer_gamma_; ++k) {
        sum += jk;
        jk *= j;
      }
      return -s * sum / jk;
    }
  }
}

double PolytropicLaw::power(double s) const { return 1.0 + bracket(s); }

double PolytropicLaw::potential(double s) const {
  const double j = 1.0 + s;
  if (integer_gamma_ == 2) return s * s / j;
  if (integer_gamma_ == 3) return s * s * (3.0 + 2.0 * s) / (2.0 * j * j);
  if (std::abs(s) < 1e-3) {
    // -(1/m) sum_{k>=2} binom(m,k) s^k with m = 1 - gamma
    const double m = 1.0 - gamma_;
    double coeff = m;  // binom(m,1)
    double sk = s;
    double acc = 0.0;
    for (int k = 2; k <= 9; ++k) {
      coeff *= (m - (k - 1)) / k;
      sk *= s;
      acc += coeff * sk;
    }
    return -acc / m;
  }
  return std::expm1((1.0 - gamma_) * std::log1p(s)) / (gamma_ - 1.0) + s;
}

}  // namespace vfbns
