#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zenga/estimator.hpp"
#include "zenga/models.hpp"
#include "zenga/rng.hpp"
#include "zenga/simulation.hpp"

using namespace zenga;

TEST_CASE("empirical_quantile: type-1 convention") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  CHECK(empirical_quantile(v, 0.5) == 2.0);
  CHECK(empirical_quantile(v, 0.51) == 3.0);
  CHECK(empirical_quantile({7.5}, 0.123) == 7.5);
  CHECK(empirical_quantile({7.5}, 0.987) == 7.5);
  CHECK_THROWS_AS(empirical_quantile({}, 0.5), ConditioningError);
  CHECK_THROWS_AS(empirical_quantile(v, 0.0), ValidationError);
}

TEST_CASE("tail_subsample: strict filter") {
  const BivariateSample s({1, 2, 3, 4}, {1, 2, 3, 4});
  const TailSubsample t = tail_subsample(s, Direction::d12, 0.5);
  REQUIRE(t.size() == 2);
  CHECK(t.values[0] == 3.0);
  CHECK(t.values[1] == 4.0);

  CHECK_THROWS_AS(tail_subsample(s, Direction::d12, 0.99), ConditioningError);

  // total ties saturate the strict inequality
  const BivariateSample ties(std::vector<double>(10, 5.0), std::vector<double>(10, 5.0));
  CHECK_THROWS_AS(tail_subsample(ties, Direction::d12, 0.5), ConditioningError);
}

TEST_CASE("estimate_lower_partial_mean: bracketed-sum fixtures") {
  TailSubsample sub;
  sub.direction = Direction::d12;
  sub.threshold_level = 0.5;
  sub.values = {3.0, 4.0};
  CHECK(estimate_lower_partial_mean(sub, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
  // k = 0 branch
  CHECK(estimate_lower_partial_mean(sub, 0.25) == doctest::Approx(3.0).epsilon(1e-15));

  TailSubsample flat;
  flat.direction = Direction::d12;
  flat.threshold_level = 0.5;
  flat.values = {2.5, 2.5, 2.5};
  for (double u : {0.2, 0.5, 0.9})
    CHECK(estimate_lower_partial_mean(flat, u) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("estimate_lower_partial_mean never dereferences past the end") {
  TailSubsample sub;
  sub.direction = Direction::d21;
  sub.threshold_level = 0.5;
  sub.values = {1.0, 2.0};
  // u1 = 0.5 on n_u = 2 gives k = 1 and a vanishing fractional coefficient;
  // larger u1 values keep k < n_u strictly
  CHECK(estimate_lower_partial_mean(sub, 0.5) == doctest::Approx(1.0));
  CHECK(estimate_lower_partial_mean(sub, 0.999) ==
        doctest::Approx((0.5 + (0.999 - 0.5) * 2.0) / 0.999));
}

TEST_CASE("estimate_vbzc: four-point hand example is exact") {
  const BivariateSample s({1, 2, 3, 4}, {1, 2, 3, 4});
  const VbzcPoint v = estimate_vbzc(s, QuantilePoint(0.5, 0.5));
  CHECK(v.i12 == 0.25);  // exact in floating point
  CHECK(v.i21 == 0.25);
}

TEST_CASE("estimate_vbzc: near-degenerate jittered sample") {
  Rng rng(17);
  std::vector<double> a(50), b(50);
  for (std::size_t i = 0; i < 50; ++i) {
    a[i] = 3.0 * (1.0 + 1e-6 * rng.uniform01());
    b[i] = 8.0 * (1.0 + 1e-6 * rng.uniform01());
  }
  const VbzcPoint v = estimate_vbzc(BivariateSample(a, b), QuantilePoint(0.5, 0.5));
  CHECK(std::abs(v.i12) < 1e-4);
  CHECK(std::abs(v.i21) < 1e-4);
}

TEST_CASE("estimate_vbzc: all-equal sample cannot condition") {
  const BivariateSample ties(std::vector<double>(8, 2.0), std::vector<double>(8, 3.0));
  CHECK_THROWS_AS(estimate_vbzc(ties, QuantilePoint(0.5, 0.5)), ConditioningError);
}

TEST_CASE("estimate_lower_partial_mean equals the step-quantile Riemann oracle") {
  // Enumerated family over a fixed value set, sizes 1..6, u1 on the 1/60
  // lattice so the oracle's subintervals align with every step.
  const std::vector<double> pool = {0.7, 1.3, 2.0, 3.1, 4.5, 6.2};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<double> values(pool.begin(), pool.begin() + n);
    // a few deterministic shuffles of the pool prefix
    for (int variant = 0; variant < 3; ++variant) {
      std::vector<double> v = values;
      if (variant == 1) std::reverse(v.begin(), v.end());
      if (variant == 2) std::rotate(v.begin(), v.begin() + n / 2, v.end());
      std::sort(v.begin(), v.end());
      TailSubsample sub;
      sub.direction = Direction::d12;
      sub.threshold_level = 0.5;
      sub.values = v;
      for (double u1 : {3.0 / 60.0, 15.0 / 60.0, 30.0 / 60.0, 45.0 / 60.0, 57.0 / 60.0}) {
        const double est = estimate_lower_partial_mean(sub, u1);
        const double oracle = oracles::riemann_step_lower_mean(v, u1);
        CHECK(est == doctest::Approx(oracle).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("empirical bounds: estimates live in [0,1] for random positive samples") {
  std::mt19937_64 gen(909);
  std::uniform_int_distribution<std::size_t> size(5, 60);
  std::uniform_real_distribution<double> level(0.15, 0.8);
  std::lognormal_distribution<double> value(0.0, 1.0);
  int checked = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = size(gen);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = value(gen);
      b[i] = value(gen);
    }
    const QuantilePoint u(level(gen), level(gen));
    try {
      const VbzcPoint v = estimate_vbzc(BivariateSample(a, b), u);
      CHECK(v.i12 >= 0.0);
      CHECK(v.i12 <= 1.0);
      CHECK(v.i21 >= 0.0);
      CHECK(v.i21 <= 1.0);
      ++checked;
    } catch (const ConditioningError&) {
      // small n with a high level; the missing-cell policy covers this
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("empirical scale invariance") {
  const BivariateSample s = lognormal_sample(LognormalParams{}, 200, 99);
  std::mt19937_64 gen(4444);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double a1 = scale(gen), a2 = scale(gen);
    std::vector<double> xa(s.size()), xb(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      xa[i] = a1 * s.x1[i];
      xb[i] = a2 * s.x2[i];
    }
    const BivariateSample scaled(xa, xb);
    for (double u : {0.3, 0.5, 0.7}) {
      const VbzcPoint base = estimate_vbzc(s, QuantilePoint(u, u));
      const VbzcPoint sc = estimate_vbzc(scaled, QuantilePoint(u, u));
      CHECK(std::abs(base.i12 - sc.i12) <= 1e-12);
      CHECK(std::abs(base.i21 - sc.i21) <= 1e-12);
    }
  }
}

TEST_CASE("estimate_surface: Table-2 style grid and missing cells") {
  const BivariateSample s = lognormal_sample(LognormalParams{}, 200, 5);
  const std::vector<double> levels = {0.2, 0.5, 0.8};
  const SurfaceGrid g = estimate_surface(s, levels, levels);
  CHECK(g.measures.size() == 2);
  CHECK(g.provenance == Provenance::empirical);
  REQUIRE(g.sample_size.has_value());
  CHECK(*g.sample_size == 200);
  std::size_t cells = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK_FALSE(std::isnan(g.values[0].at(i, j)));
      CHECK_FALSE(std::isnan(g.values[1].at(i, j)));
      ++cells;
    }
  CHECK(cells == 9);
  CHECK(g.values[0].at(1, 1) ==
        doctest::Approx(estimate_vbzc(s, QuantilePoint(0.5, 0.5)).i12).epsilon(1e-15));

  // all-equal sample: every cell is missing, not zero
  const BivariateSample ties(std::vector<double>(12, 1.0), std::vector<double>(12, 1.0));
  const SurfaceGrid gm = estimate_surface(ties, levels, levels);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::isnan(gm.values[0].at(i, j)));
      CHECK(std::isnan(gm.values[1].at(i, j)));
    }
}

TEST_CASE("estimate_surface: levels must be interior") {
  const BivariateSample s({1, 2, 3}, {3, 2, 1});
  CHECK_THROWS_AS(estimate_surface(s, {0.0, 0.5}, {0.5}), ValidationError);
}

TEST_CASE("extract_slice") {
  const BivariateSample s = lognormal_sample(LognormalParams{}, 300, 8);
  const std::vector<double> levels = {0.2, 0.5, 0.8};
  const SurfaceGrid g = estimate_surface(s, levels, levels);
  const SurfaceGrid row = extract_slice(g, false, 0.5);  // fixed u2
  CHECK(row.u2_levels == std::vector<double>{0.5});
  CHECK(row.u1_levels == levels);
  CHECK(row.values[0].at(1, 0) == g.values[0].at(1, 1));
  const SurfaceGrid col = extract_slice(g, true, 0.8);  // fixed u1
  CHECK(col.u1_levels == std::vector<double>{0.8});
  CHECK(col.values[1].at(0, 2) == g.values[1].at(2, 2));
  CHECK_THROWS_AS(extract_slice(g, true, 0.33), ValidationError);
}

TEST_CASE("lognormal estimate near the plug-in truth at n = 500") {
  const LognormalParams dgp;
  const auto truth = reference_truth(dgp, QuantilePoint(0.5, 0.5), 1000000, 4242);
  const BivariateSample s = lognormal_sample(dgp, 500, 31);
  const VbzcPoint v = estimate_vbzc(s, QuantilePoint(0.5, 0.5));
  // three Monte Carlo standard errors at n = 500 (sd ~ 0.017 -> 0.052 band)
  CHECK(std::abs(v.i12 - truth.first) < 0.055);
  CHECK(std::abs(v.i21 - truth.second) < 0.055);
}

TEST_CASE("consistency: median error at least halves per decade (1.5 slack)") {
  const double exact = (32.0 - 12.0 * std::sqrt(2.0)) / 23.0;
  auto median_error = [&](std::size_t n) {
    std::vector<double> errs;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const BivariateSample s = pareto_unit_sample(2.0, n, mix64(seed));
      const VbzcPoint v = estimate_vbzc(s, QuantilePoint(0.5, 0.5));
      errs.push_back(std::abs(v.i12 - exact));
    }
    std::sort(errs.begin(), errs.end());
    return errs[errs.size() / 2];
  };
  const double e200 = median_error(200);
  const double e2000 = median_error(2000);
  const double e20000 = median_error(20000);
  CHECK(e2000 <= 0.5 * 1.5 * e200);
  CHECK(e20000 <= 0.5 * 1.5 * e2000);
  MESSAGE("median errors: ", e200, " -> ", e2000, " -> ", e20000);
}

TEST_CASE("empirical_model mirrors the estimator exactly") {
  const BivariateSample s = lognormal_sample(LognormalParams{}, 400, 77);
  const auto m = empirical_model(s);
  std::vector<double> sorted1(s.x1);
  std::sort(sorted1.begin(), sorted1.end());
  CHECK(m.q1(0.37) == empirical_quantile(sorted1, 0.37));

  for (double u1 : {0.3, 0.6})
    for (double u2 : {0.4, 0.7}) {
      const QuantilePoint u(u1, u2);
      const VbzcPoint via_model = vbzc_components(m, u);
      const VbzcPoint direct = estimate_vbzc(s, u);
      CHECK(via_model.i12 == doctest::Approx(direct.i12).epsilon(1e-13));
      CHECK(via_model.i21 == doctest::Approx(direct.i21).epsilon(1e-13));
    }
}
