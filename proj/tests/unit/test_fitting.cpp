#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vfbns/fitting.hpp"

using namespace vfbns;

TEST_CASE("least squares recovers a line") {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {1, 3, 5, 7};
  const LinearFit f = least_squares(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.residual < 1e-14);
  CHECK(f.samples == 4);
  CHECK_THROWS_AS(least_squares(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("power law fit") {
  std::vector<double> x, y;
  for (double e : {0.4, 0.2, 0.1, 0.05}) {
    x.push_back(e);
    y.push_back(3.0 * e * e);
  }
  const LinearFit f = power_law_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-9);
  CHECK_THROWS_AS(power_law_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(power_law_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 0, 2}), std::invalid_argument);
}

TEST_CASE("decay fits of exact power laws") {
  for (double slope : {-1.5, 0.0, -9.0 / 7.0}) {
    std::vector<double> t, q;
    for (int k = 0; k <= 40; ++k) {
      t.push_back(0.5 * k);
      q.push_back(2.0 * std::pow(1.0 + 0.5 * k, slope));
    }
    const DecayFit d = decay_fit(t, q, 1.0, 20.0);
    CHECK(d.fit.slope == doctest::Approx(slope).epsilon(1e-9));
    CHECK(std::abs(d.fit.slope - slope) < 1e-9);
    CHECK(d.excluded == 0);
  }
}

TEST_CASE("decay fit requires ten samples in the window") {
  std::vector<double> t, q;
  for (int k = 0; k < 20; ++k) {
    t.push_back(k);
    q.push_back(1.0 / (1.0 + k));
  }
  CHECK_NOTHROW(decay_fit(t, q, 0.0, 9.0));
  CHECK_THROWS_AS(decay_fit(t, q, 0.0, 8.0), std::invalid_argument);
  q[3] = 0.0;
  const DecayFit d = decay_fit(t, q, 0.0, 19.0);
  CHECK(d.excluded == 1);
}
