#ifndef ZENGA_MODELS_HPP
#define ZENGA_MODELS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zenga/numerics.hpp"

namespace zenga {

// Paired strictly positive observations.
struct BivariateSample {
  std::vector<double> x1;
  std::vector<double> x2;

  BivariateSample(std::vector<double> a, std::vector<double> b);
  std::size_t size() const { return x1.size(); }
};

// Support box for density-based operations.  Upper bounds may be +inf; the
// operations that need quadrature over the support require finite bounds and
// raise CapabilityError otherwise.
struct SupportRect {
  double x1_lo = 0.0;
  double x1_hi = std::numeric_limits<double>::infinity();
  double x2_lo = 0.0;
  double x2_hi = std::numeric_limits<double>::infinity();

  bool finite() const {
    return std::isfinite(x1_lo) && std::isfinite(x1_hi) &&
           std::isfinite(x2_lo) && std::isfinite(x2_hi);
  }
};

// Capability record for a bivariate model expressed through its quantile
// machinery.  q1/q2 are the marginal quantiles; q21(u1,u2) is the quantile
// of X2 given X1 > Q1(u1) and q12(u1,u2) the quantile of X1 given
// X2 > Q2(u2).  Everything beyond those four is optional: callers fall back
// to numeric paths when a capability is absent.
struct BivariateQuantileModel {
  std::string name;

  std::function<double(double)> q1;
  std::function<double(double)> q2;
  std::function<double(double, double)> q21;
  std::function<double(double, double)> q12;

  // Joint density and its support, for the first-moment and x-space paths.
  std::function<double(double, double)> density;
  SupportRect support;

  // E(X1 X2) under the joint law (not the quantile-framework product moment).
  std::optional<double> product_moment;

  // Survival-coordinate forms Q(1 - s), used by the tail-substituted
  // quadratures so heavy-tailed quantiles are evaluated without the
  // cancellation in 1 - u.  Optional; bounded families fall back to the
  // plain forms.
  std::function<double(double)> q1_sv;
  std::function<double(double)> q2_sv;
  std::function<double(double, double)> q21_sv;  // (s1, s2)
  std::function<double(double, double)> q12_sv;  // (s1, s2)

  // Closed-form first-moment quantiles, when the family has them.
  std::function<double(double)> fm_q1;
  std::function<double(double, double)> fm_q21;

  // Exact directional partial integrals J and conditional means mu.  Filled
  // in for models whose conditional quantiles are step functions (empirical
  // tabulations), where adaptive quadrature would be the wrong tool.
  std::function<double(double, double)> j12;  // J12(u1, u2)
  std::function<double(double, double)> j21;  // J21(u1, u2)
  std::function<double(double)> mu12;         // mu12(u2)
  std::function<double(double)> mu21;         // mu21(u1)

  bool has_quantiles() const { return q1 && q2 && q21 && q12; }
  bool has_fm_closed_form() const { return static_cast<bool>(fm_q1) && static_cast<bool>(fm_q21); }
  bool has_exact_partials() const { return j12 && j21 && mu12 && mu21; }
};

// ---------------------------------------------------------------------------
// Parametric families.

// Shifted bivariate Pareto with survival (1 + x1 + x2)^(-alpha) on
// [0, inf)^2.  alpha > 2 keeps E(X1 X2) = 1/((alpha-1)(alpha-2)) finite.
struct ParetoShiftedParams {
  double alpha;
  void validate() const;
};

// Bivariate Pareto with survival (x1 + x2 - 1)^(-c) on [1, inf)^2 and
// Pareto(c) marginals.  The conditional quantiles have the closed forms used
// throughout the vector-valued curve machinery.
struct ParetoUnitParams {
  double c;
  void validate() const;
};

// Family given directly by quantile functions Q1 = K1 u1^b1,
// Q21 = K2 u1^b1 u2^b2 on the unit cube of levels.
struct PowerParams {
  double K1, K2;
  double b1, b2;
  void validate() const;
};

struct LognormalParams {
  double mu1 = 0.0, mu2 = 0.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double rho = 0.5;
  // sigma == 0 is accepted as the documented degenerate limit.
  void validate() const;
  bool degenerate() const { return sigma1 == 0.0 && sigma2 == 0.0; }
};

struct QuantilePair {
  double first;
  double second;
};

struct ParetoFmCdfs {
  double joint;
  double marginal1;
  double cond21;
};

// Bivariate quantile tuple (Q1, Q21) of the shifted Pareto family.
QuantilePair pareto_shifted_quantiles(double alpha, const QuantilePoint& u);

// High-level asymptotic approximations of the first-moment quantile tuple of
// the shifted Pareto family.
QuantilePair pareto_shifted_fm_quantiles_asymptotic(double alpha,
                                                    const QuantilePoint& u);

// The three closed-form first-moment distribution functions of the shifted
// Pareto family, evaluated literally as printed for the family: the joint
// F^(1), the first marginal, and the ratio conditional F^(1)/F1^(1).
ParetoFmCdfs pareto_shifted_fm_cdfs(double alpha, double x1, double x2);

// Conditional quantile pair (Q12, Q21) of the unit-scale Pareto family.
QuantilePair pareto_unit_conditional_quantiles(double c, const QuantilePoint& u);

// Quantile tuple (Q1, Q21) of the power family.
QuantilePair power_quantiles(const PowerParams& p, const QuantilePoint& u);

// n pairs (exp(Z1), exp(Z2)) with (Z1, Z2) bivariate normal.  Deterministic
// stream for a given seed; see rng.hpp for the documented generator chain.
BivariateSample lognormal_sample(const LognormalParams& p, std::size_t n,
                                 std::uint64_t seed);

// n pairs from the unit-scale Pareto family (hierarchical inverse-CDF
// sampling); used by the consistency checks.
BivariateSample pareto_unit_sample(double c, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Model factories.

BivariateQuantileModel pareto_shifted_model(double alpha);
BivariateQuantileModel pareto_unit_model(double c);
BivariateQuantileModel power_model(const PowerParams& p);
BivariateQuantileModel degenerate_model(double c1, double c2);

// Coordinatewise positive rescaling (a1 X1, a2 X2) of an existing model's
// quantile machinery.
BivariateQuantileModel scaled_model(const BivariateQuantileModel& base,
                                    double a1, double a2);

}  // namespace zenga

#endif  // ZENGA_MODELS_HPP
