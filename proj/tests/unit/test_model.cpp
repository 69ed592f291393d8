#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vfbns/model.hpp"
#include "vfbns/polytropic.hpp"

using namespace vfbns;

TEST_CASE("steady density closed forms") {
  const SteadyProfile p2(2.0, 1.0, 1.0);
  CHECK(steady_density(p2, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(steady_density(p2, 1.0) == 0.0);
  CHECK(steady_density(p2, 1.5) == 0.0);
  CHECK(steady_density(p2, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  const SteadyProfile p14(1.4, 1.0, 1.0);
  // (2/7)^{5/2}, high-precision reference
  CHECK(steady_density(p14, 0.0) == doctest::Approx(0.0436344884754978587).epsilon(1e-14));

  const SteadyProfile p3(3.0, 1.0, 1.0);
  CHECK(steady_density(p3, 0.0) == doctest::Approx(0.816496580927726).epsilon(1e-14));
}

TEST_CASE("steady mass and domain length") {
  CHECK(steady_mass(2.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(steady_mass(1.4, 1.0, 1.0) == doctest::Approx(0.0124669967072851025).epsilon(1e-14));
  CHECK(steady_mass(2.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double gamma : {1.2, 1.4, 2.0, 3.0}) {
    const double M = steady_mass(gamma, 1.7, 0.8);
    CHECK(domain_length(gamma, 1.7, M) == doctest::Approx(0.8).epsilon(1e-13));
  }
}

TEST_CASE("mass matches quadrature of the profile") {
  using boost::math::quadrature::gauss_kronrod;
  for (double gamma : {1.4, 2.0, 3.0}) {
    for (double l : {1.0, 2.0}) {
      const SteadyProfile p(gamma, 1.0, l);
      const double q = gauss_kronrod<double, 61>::integrate([&](double x) { return p.density(x); }, 0.0, l, 15, 1e-14);
      CHECK(q == doctest::Approx(p.mass()).epsilon(1e-8));
    }
  }
}

TEST_CASE("midpoint quadrature of the mass converges at second order") {
  const SteadyProfile p(1.4, 1.0, 1.0);
  auto err = [&](int n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += p.density_from_distance((n - i + 0.5) / n);
    return std::abs(s / n - p.mass());
  };
  CHECK(err(200) / err(400) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("profile shape: positive, decreasing, power affine, hydrostatic") {
  for (double gamma : {1.1, 1.4, 2.0, 3.0}) {
    const SteadyProfile p(gamma, 1.0, 1.0);
    double prev = p.density(0.0);
    for (int k = 1; k < 100; ++k) {
      const double x = k / 100.0;
      const double r = p.density(x);
      CHECK(r > 0.0);
      CHECK(r < prev);
      prev = r;
      CHECK(std::pow(r, gamma - 1.0) == doctest::Approx((gamma - 1.0) / gamma * (1.0 - x)).epsilon(1e-12));
    }
    CHECK(p.density(1.0) == 0.0);
    for (double x : {0.1, 0.5, 0.9}) {
      const double dx = 1e-5;
      const double d = (std::pow(p.density(x + dx), gamma) - std::pow(p.density(x - dx), gamma)) / (2 * dx);
      CHECK(d == doctest::Approx(-p.density(x)).epsilon(1e-6));
    }
  }
}

TEST_CASE("params validation names the field") {
  Params p;
  p.gamma = 0.9;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("gamma must exceed 1"), std::invalid_argument);
  p = Params{};
  p.epsilon = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("epsilon"), std::invalid_argument);
  p = Params{};
  p.N = 3;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("N"), std::invalid_argument);
  p = Params{};
  p.alpha = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_NOTHROW(Params{}.validate());
}

TEST_CASE("normalize fixes l_bar and g") {
  Params p;
  p.gamma = 2.0;
  p.g = 3.0;
  p.epsilon = 0.3;
  const NormalizedModel m = normalize(p);
  CHECK(m.profile.l_bar() == 1.0);
  CHECK(m.profile.g() == 1.0);
  CHECK(m.params.epsilon == 0.3);
  CHECK(m.profile.density(0.5) == doctest::Approx(0.25));
  CHECK(m.profile.mass() == doctest::Approx(0.25));
}

TEST_CASE("polytropic helpers agree with direct formulas") {
  for (double gamma : {1.4, 2.0, 3.0, 4.0, 5.0 / 3.0}) {
    const PolytropicLaw law(gamma);
    CHECK(law.bracket(0.0) == 0.0);
    CHECK(law.potential(0.0) == 0.0);
    for (double s : {-0.5, -0.1, -1e-4, 1e-6, 1e-4, 0.05, 0.3, 2.0}) {
      const double J = 1.0 + s;
      CHECK(law.bracket(s) == doctest::Approx(std::pow(J, -gamma) - 1.0).epsilon(1e-12));
      const double T = std::pow(J, 1.0 - gamma) / (gamma - 1.0) + J - gamma / (gamma - 1.0);
      // the direct formula cancels badly for tiny s; compare to the quadratic term there
      if (std::abs(s) > 1e-2) {
        CHECK(law.potential(s) == doctest::Approx(T).epsilon(1e-10));
      } else {
        CHECK(law.potential(s) == doctest::Approx(0.5 * gamma * s * s).epsilon(3.0 * std::abs(s) * (gamma + 1)));
      }
      CHECK(law.potential(s) >= 0.0);
    }
  }
  const PolytropicLaw law(1.4);
  // continuity across the series switch
  CHECK(law.potential(0.999e-3) == doctest::Approx(law.potential(1.001e-3)).epsilon(3e-3));
}
