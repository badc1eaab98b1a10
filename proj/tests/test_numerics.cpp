#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zenga/numerics.hpp"

using namespace zenga;

TEST_CASE("integrate_1d: polynomial basics") {
  CHECK(integrate_1d([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate_1d([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("integrate_1d: inverse square-root tail on a regular interval") {
  // antiderivative 2(1 - sqrt(1-p)) gives 2 - sqrt(2) at p = 0.5
  const double v =
      integrate_1d([](double p) { return 1.0 / std::sqrt(1.0 - p); }, 0.0, 0.5);
  CHECK(v == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("integrate_1d: polynomial exactness up to degree 9") {
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int rep = 0; rep < 25; ++rep) {
    double c[10];
    for (double& v : c) v = coef(gen);
    auto poly = [&](double x) {
      double acc = 0.0;
      for (int k = 9; k >= 0; --k) acc = acc * x + c[k];
      return acc;
    };
    double exact = 0.0;
    for (int k = 0; k <= 9; ++k) exact += c[k] / (k + 1.0);  // over [0,1]
    CHECK(integrate_1d(poly, 0.0, 1.0) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("integrate_1d: determinism is bit-exact") {
  auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x); };
  const double a = integrate_1d(f, 0.0, 5.0);
  const double b = integrate_1d(f, 0.0, 5.0);
  CHECK(a == b);
}

TEST_CASE("integrate_1d: empty interval and bad input") {
  CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(integrate_1d([](double x) { return std::log(x); }, -1.0, 1.0),
                  DomainError);
}

TEST_CASE("integrate_1d: depth exhaustion carries the best estimate") {
  // x^(-1/2) at the left endpoint defeats plain bisection refinement
  try {
    integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(e.error_estimate > 0.0);
  }
}

TEST_CASE("tail_integral_1d: integrable endpoint singularities") {
  // integral of (1-p)^(-1/2) over [0,1] = 2, supplied in survival form
  const double v = detail::tail_integral_1d(
      [](double s) { return 1.0 / std::sqrt(s); }, 0.0, Tolerance{});
  CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  // gamma = 0.8 case: integral of s^(-0.8) ds over (0,1) = 5
  const double w = detail::tail_integral_1d(
      [](double s) { return std::pow(s, -0.8); }, 0.0, Tolerance{});
  CHECK(w == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("integrate_2d: separable fixtures") {
  CHECK(integrate_2d([](double u, double v) { return u * v; },
                     IntervalRect{0.0, 1.0, 0.0, 1.0}) ==
        doctest::Approx(0.25).epsilon(1e-13));
  CHECK(integrate_2d([](double, double) { return 1.0; },
                     IntervalRect{0.0, 0.5, 0.0, 0.5}) ==
        doctest::Approx(0.25).epsilon(1e-13));
  // separable antiderivative: (0.5^5/5) * (0.5^4/4)
  CHECK(integrate_2d([](double p1, double p2) {
          return std::pow(p1, 4) * std::pow(p2, 3);
        },
                     IntervalRect{0.0, 0.5, 0.0, 0.5}) ==
        doctest::Approx(9.765625e-5).epsilon(1e-12));
}

TEST_CASE("integrate_2d: random separable polynomials are exact") {
  std::mt19937_64 gen(777);
  std::uniform_real_distribution<double> coef(0.1, 2.0);
  for (int rep = 0; rep < 10; ++rep) {
    const double a = coef(gen), b = coef(gen);
    const int dx = rep % 5, dy = (rep * 3) % 6;
    auto f = [&](double x, double y) {
      return a * std::pow(x, dx) * b * std::pow(y, dy);
    };
    const double exact = a * b / ((dx + 1.0) * (dy + 1.0));
    CHECK(integrate_2d(f, IntervalRect{0.0, 1.0, 0.0, 1.0}) ==
          doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("invert_monotone: fixtures") {
  CHECK(invert_monotone([](double x) { return x * x; }, 0.25, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-9));
  // first-moment marginal of the shifted Pareto family at alpha = 3:
  // F(x) = 1 - (1+x)^(-3) (1 + 3x + 2x^2), F(1) = 0.25
  auto fm = [](double x) {
    if (x <= 0.0) return 0.0;
    return 1.0 - std::pow(1.0 + x, -3.0) * (1.0 + 3.0 * x + 2.0 * x * x);
  };
  CHECK(invert_monotone(fm, 0.25, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  // left-endpoint convention
  CHECK(invert_monotone([](double x) { return x; }, 0.0, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("invert_monotone: residual property") {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> tgt(0.05, 5.0);
  auto g = [](double x) { return x * x * x + x; };  // strictly increasing
  for (int rep = 0; rep < 50; ++rep) {
    const double target = tgt(gen);
    const double x = invert_monotone(g, target, 0.3);
    CHECK(g(x) >= target);
    CHECK(g(x - 1e-8 * (1.0 + std::abs(x))) < target + 1e-6);
  }
}

TEST_CASE("invert_monotone: unbounded support error") {
  CHECK_THROWS_AS(invert_monotone([](double) { return 0.0; }, 1.0, 0.0),
                  UnboundedSupportError);
}

TEST_CASE("QuantilePoint clips and records") {
  const QuantilePoint inside(0.3, 0.7);
  CHECK_FALSE(inside.clipped);
  const QuantilePoint edge(0.0, 1.0);
  CHECK(edge.clipped);
  CHECK(edge.u1 == kLevelEpsilon);
  CHECK(edge.u2 == 1.0 - kLevelEpsilon);
  CHECK_THROWS_AS(QuantilePoint(std::nan(""), 0.5), ValidationError);
}

TEST_CASE("Tolerance and IntervalRect validation") {
  const Tolerance bad_abs{-1.0, 1e-8, 30};
  const Tolerance bad_depth{1e-10, 1e-8, 0};
  const IntervalRect bad_rect{1.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(bad_abs.validate(), ValidationError);
  CHECK_THROWS_AS(bad_depth.validate(), ValidationError);
  CHECK_THROWS_AS(bad_rect.validate(), ValidationError);
}
