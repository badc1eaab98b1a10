#include "zenga/models.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "zenga/rng.hpp"

namespace zenga {

BivariateSample::BivariateSample(std::vector<double> a, std::vector<double> b)
    : x1(std::move(a)), x2(std::move(b)) {
  if (x1.size() != x2.size())
    throw ValidationError("BivariateSample: coordinate vectors differ in length");
  if (x1.empty()) throw ValidationError("BivariateSample: empty sample");
  for (std::size_t i = 0; i < x1.size(); ++i) {
    if (!(std::isfinite(x1[i]) && x1[i] > 0.0) ||
        !(std::isfinite(x2[i]) && x2[i] > 0.0)) {
      std::ostringstream msg;
      msg << "BivariateSample: observation " << (i + 1)
          << " is not strictly positive and finite";
      throw ValidationError(msg.str());
    }
  }
}

void ParetoShiftedParams::validate() const {
  if (!(alpha > 2.0))
    throw ValidationError("ParetoShiftedParams requires alpha > 2");
}

void ParetoUnitParams::validate() const {
  if (!(c > 0.0)) throw ValidationError("ParetoUnitParams requires c > 0");
}

void PowerParams::validate() const {
  if (!(K1 > 0.0 && K2 > 0.0 && b1 > 0.0 && b2 > 0.0))
    throw ValidationError("PowerParams requires positive scales and exponents");
}

void LognormalParams::validate() const {
  if (!(sigma1 >= 0.0 && sigma2 >= 0.0))
    throw ValidationError("LognormalParams requires sigma >= 0");
  if (!(rho > -1.0 && rho < 1.0))
    throw ValidationError("LognormalParams requires rho in (-1, 1)");
  if (!(std::isfinite(mu1) && std::isfinite(mu2)))
    throw ValidationError("LognormalParams requires finite means");
}

// ---------------------------------------------------------------------------

QuantilePair pareto_shifted_quantiles(double alpha, const QuantilePoint& u) {
  ParetoShiftedParams{alpha}.validate();
  const double g1 = std::pow(1.0 - u.u1, -1.0 / alpha);
  const double g2 = std::pow(1.0 - u.u2, -1.0 / alpha);
  return {g1 - 1.0, g1 * (g2 - 1.0)};
}

QuantilePair pareto_shifted_fm_quantiles_asymptotic(double alpha,
                                                    const QuantilePoint& u) {
  ParetoShiftedParams{alpha}.validate();
  const double e = 1.0 / (alpha - 2.0);
  const double q1 = std::pow((alpha - 1.0) / (1.0 - u.u1), e);
  const double q21 =
      std::pow((alpha - 1.0) / (1.0 - u.u1 + u.u1 * u.u2), e);
  return {q1, q21};
}

namespace {

// (1 + t)^(-alpha) (1 + alpha t + (alpha - 1) t^2), the survival of the
// first marginal of the shifted Pareto first-moment distribution.
double fm_marginal_survival(double alpha, double t) {
  return std::pow(1.0 + t, -alpha) *
         (1.0 + alpha * t + (alpha - 1.0) * t * t);
}

double fm_joint_cdf(double alpha, double x1, double x2) {
  const double cross =
      1.0 + alpha * x1 + alpha * x2 + (alpha - 1.0) * x1 * x1 +
      (alpha - 1.0) * x2 * x2 + alpha * (alpha - 1.0) * x1 * x2;
  return 1.0 - fm_marginal_survival(alpha, x1) - fm_marginal_survival(alpha, x2) +
         std::pow(1.0 + x1 + x2, -alpha) * cross;
}

}  // namespace

ParetoFmCdfs pareto_shifted_fm_cdfs(double alpha, double x1, double x2) {
  ParetoShiftedParams{alpha}.validate();
  if (!(x1 >= 0.0 && x2 >= 0.0))
    throw ValidationError("pareto_shifted_fm_cdfs requires x1, x2 >= 0");
  ParetoFmCdfs out{};
  out.joint = fm_joint_cdf(alpha, x1, x2);
  out.marginal1 = 1.0 - fm_marginal_survival(alpha, x1);
  if (out.marginal1 <= 0.0)
    throw ConditioningError(
        "pareto_shifted_fm_cdfs: conditional undefined, marginal mass is 0 at x1");
  out.cond21 = out.joint / out.marginal1;
  return out;
}

QuantilePair pareto_unit_conditional_quantiles(double c, const QuantilePoint& u) {
  ParetoUnitParams{c}.validate();
  const double g1 = std::pow(1.0 - u.u1, -1.0 / c);
  const double g2 = std::pow(1.0 - u.u2, -1.0 / c);
  return {1.0 + g2 * (g1 - 1.0), 1.0 + g1 * (g2 - 1.0)};
}

QuantilePair power_quantiles(const PowerParams& p, const QuantilePoint& u) {
  p.validate();
  const double f1 = std::pow(u.u1, p.b1);
  return {p.K1 * f1, p.K2 * f1 * std::pow(u.u2, p.b2)};
}

BivariateSample lognormal_sample(const LognormalParams& p, std::size_t n,
                                 std::uint64_t seed) {
  p.validate();
  if (n < 1) throw ValidationError("lognormal_sample requires n >= 1");
  Rng rng(seed);
  const double cross = std::sqrt(1.0 - p.rho * p.rho);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = rng.normal();
    const double z2 = p.rho * z1 + cross * rng.normal();
    a[i] = std::exp(p.mu1 + p.sigma1 * z1);
    b[i] = std::exp(p.mu2 + p.sigma2 * z2);
  }
  return BivariateSample(std::move(a), std::move(b));
}

BivariateSample pareto_unit_sample(double c, std::size_t n, std::uint64_t seed) {
  ParetoUnitParams{c}.validate();
  if (n < 1) throw ValidationError("pareto_unit_sample requires n >= 1");
  Rng rng(seed);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    // X1 is Pareto(c) on [1, inf); given X1 = x1, (x1 + X2 - 1)/x1 is
    // Pareto(c + 1) on [1, inf).
    const double x1 = std::pow(rng.uniform01(), -1.0 / c);
    const double t = std::pow(rng.uniform01(), -1.0 / (c + 1.0));
    a[i] = x1;
    b[i] = 1.0 + x1 * (t - 1.0);
  }
  return BivariateSample(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------

BivariateQuantileModel pareto_shifted_model(double alpha) {
  ParetoShiftedParams{alpha}.validate();
  BivariateQuantileModel m;
  m.name = "pareto_shifted(alpha=" + std::to_string(alpha) + ")";
  auto marginal = [alpha](double u) {
    return std::pow(1.0 - u, -1.0 / alpha) - 1.0;
  };
  m.q1 = marginal;
  m.q2 = marginal;
  m.q21 = [alpha](double u1, double u2) {
    return std::pow(1.0 - u1, -1.0 / alpha) *
           (std::pow(1.0 - u2, -1.0 / alpha) - 1.0);
  };
  m.q12 = [alpha](double u1, double u2) {
    return std::pow(1.0 - u2, -1.0 / alpha) *
           (std::pow(1.0 - u1, -1.0 / alpha) - 1.0);
  };
  auto marginal_sv = [alpha](double s) { return std::pow(s, -1.0 / alpha) - 1.0; };
  m.q1_sv = marginal_sv;
  m.q2_sv = marginal_sv;
  m.q21_sv = [alpha](double s1, double s2) {
    return std::pow(s1, -1.0 / alpha) * (std::pow(s2, -1.0 / alpha) - 1.0);
  };
  m.q12_sv = [alpha](double s1, double s2) {
    return std::pow(s2, -1.0 / alpha) * (std::pow(s1, -1.0 / alpha) - 1.0);
  };
  m.density = [alpha](double x1, double x2) {
    if (x1 < 0.0 || x2 < 0.0) return 0.0;
    return alpha * (alpha + 1.0) * std::pow(1.0 + x1 + x2, -(alpha + 2.0));
  };
  m.support = SupportRect{};  // unbounded; numeric paths need a truncation
  m.product_moment = 1.0 / ((alpha - 1.0) * (alpha - 2.0));
  m.fm_q1 = [alpha](double u1) {
    return pareto_shifted_fm_quantiles_asymptotic(alpha, QuantilePoint(u1, 0.5)).first;
  };
  m.fm_q21 = [alpha](double u1, double u2) {
    return pareto_shifted_fm_quantiles_asymptotic(alpha, QuantilePoint(u1, u2)).second;
  };
  return m;
}

BivariateQuantileModel pareto_unit_model(double c) {
  ParetoUnitParams{c}.validate();
  BivariateQuantileModel m;
  m.name = "pareto_unit(c=" + std::to_string(c) + ")";
  auto marginal = [c](double u) { return std::pow(1.0 - u, -1.0 / c); };
  m.q1 = marginal;
  m.q2 = marginal;
  m.q21 = [c](double u1, double u2) {
    return pareto_unit_conditional_quantiles(c, QuantilePoint(u1, u2)).second;
  };
  m.q12 = [c](double u1, double u2) {
    return pareto_unit_conditional_quantiles(c, QuantilePoint(u1, u2)).first;
  };
  auto marginal_sv = [c](double s) { return std::pow(s, -1.0 / c); };
  m.q1_sv = marginal_sv;
  m.q2_sv = marginal_sv;
  m.q21_sv = [c](double s1, double s2) {
    return 1.0 + std::pow(s1, -1.0 / c) * (std::pow(s2, -1.0 / c) - 1.0);
  };
  m.q12_sv = [c](double s1, double s2) {
    return 1.0 + std::pow(s2, -1.0 / c) * (std::pow(s1, -1.0 / c) - 1.0);
  };
  m.density = [c](double x1, double x2) {
    if (x1 < 1.0 || x2 < 1.0) return 0.0;
    return c * (c + 1.0) * std::pow(x1 + x2 - 1.0, -(c + 2.0));
  };
  m.support = SupportRect{1.0, std::numeric_limits<double>::infinity(), 1.0,
                          std::numeric_limits<double>::infinity()};
  if (c > 2.0) {
    m.product_moment = c * (c + 1.0) *
                       (1.0 / (6.0 * (c - 2.0)) + 1.0 / (2.0 * (c - 1.0)) -
                        1.0 / (2.0 * c) - 1.0 / (6.0 * (c + 1.0)));
  }
  return m;
}

namespace {

// First-moment quantiles of the power family, derived from the joint law the
// printed distribution function determines (an absolutely continuous part on
// the wedge x2 < (K2/K1) x1 plus a comonotone component on its boundary).
// With a = 1/b1, c = 1/b2:
//   F1^(1)(x1) = (x1/K1)^(a+2)
//   P^(1)(X2 <= y, X1 > q) = N(y) with, for tau = K1 y / K2,
//     N(y) = D y^(c+1) (K1^s - q^s)                          for tau <= q
//     N(y) = (tau^L - q^L)/K1^L + D y^(c+1) (K1^s - tau^s)   for tau > q
//   where L = a+2, s = a-c+1, D = C (a-c) c / ((c+1) s mu_xy),
//   C = K1^(c-a) K2^(-c), mu_xy = K1 K2 c (a+1)/((a+2)(c+1)).
struct PowerFm {
  double K1, K2, a, c, L, s, D;

  static PowerFm make(const PowerParams& p) {
    PowerFm f;
    f.K1 = p.K1;
    f.K2 = p.K2;
    f.a = 1.0 / p.b1;
    f.c = 1.0 / p.b2;
    f.L = f.a + 2.0;
    f.s = f.a - f.c + 1.0;
    const double C = std::pow(p.K1, f.c - f.a) * std::pow(p.K2, -f.c);
    const double mu_xy =
        p.K1 * p.K2 * f.c * (f.a + 1.0) / ((f.a + 2.0) * (f.c + 1.0));
    f.D = C * (f.a - f.c) * f.c / ((f.c + 1.0) * f.s * mu_xy);
    return f;
  }

  double marginal_quantile(double u1) const {
    return K1 * std::pow(u1, 1.0 / L);
  }

  double tail_cdf_numerator(double q, double y) const {
    if (y <= 0.0) return 0.0;
    const double tau = K1 * y / K2;
    const double yc = std::pow(y, c + 1.0);
    if (tau <= q) return D * yc * (std::pow(K1, s) - std::pow(q, s));
    return (std::pow(tau, L) - std::pow(q, L)) / std::pow(K1, L) +
           D * yc * (std::pow(K1, s) - std::pow(tau, s));
  }

  double conditional_quantile(double u1, double u2) const {
    const double q = marginal_quantile(u1);
    const double target = u2 * (1.0 - u1);
    auto g = [&](double y) { return tail_cdf_numerator(q, y); };
    return invert_monotone(g, target, K2 * q / K1);
  }
};

}  // namespace

BivariateQuantileModel power_model(const PowerParams& p) {
  p.validate();
  BivariateQuantileModel m;
  m.name = "power(K1=" + std::to_string(p.K1) + ",K2=" + std::to_string(p.K2) +
           ",b1=" + std::to_string(p.b1) + ",b2=" + std::to_string(p.b2) + ")";
  m.q1 = [p](double u1) { return p.K1 * std::pow(u1, p.b1); };
  m.q2 = [p](double u2) { return p.K2 * std::pow(u2, p.b2); };
  m.q21 = [p](double u1, double u2) {
    return p.K2 * std::pow(u1, p.b1) * std::pow(u2, p.b2);
  };
  // The implied joint law mixes an absolutely continuous wedge with a
  // comonotone boundary component, so no density capability is exposed; the
  // first-moment quantiles below were derived from that law directly and
  // are only valid for b2 > b1.
  if (p.b2 > p.b1) {
    const double a = 1.0 / p.b1;
    const double c = 1.0 / p.b2;
    m.product_moment =
        p.K1 * p.K2 * c * (a + 1.0) / ((a + 2.0) * (c + 1.0));
    const PowerFm fm = PowerFm::make(p);
    m.fm_q1 = [fm](double u1) { return fm.marginal_quantile(u1); };
    m.fm_q21 = [fm](double u1, double u2) {
      return fm.conditional_quantile(u1, u2);
    };
  }
  return m;
}

BivariateQuantileModel degenerate_model(double c1, double c2) {
  if (!(c1 > 0.0 && c2 > 0.0))
    throw ValidationError("degenerate_model requires positive constants");
  BivariateQuantileModel m;
  m.name = "degenerate(" + std::to_string(c1) + "," + std::to_string(c2) + ")";
  m.q1 = [c1](double) { return c1; };
  m.q2 = [c2](double) { return c2; };
  m.q21 = [c2](double, double) { return c2; };
  m.q12 = [c1](double, double) { return c1; };
  m.product_moment = c1 * c2;
  m.fm_q1 = [c1](double) { return c1; };
  m.fm_q21 = [c2](double, double) { return c2; };
  return m;
}

BivariateQuantileModel scaled_model(const BivariateQuantileModel& base,
                                    double a1, double a2) {
  if (!(a1 > 0.0 && a2 > 0.0))
    throw ValidationError("scaled_model requires positive scale factors");
  BivariateQuantileModel m;
  m.name = base.name + "*scale(" + std::to_string(a1) + "," +
           std::to_string(a2) + ")";
  if (base.q1) m.q1 = [f = base.q1, a1](double u) { return a1 * f(u); };
  if (base.q2) m.q2 = [f = base.q2, a2](double u) { return a2 * f(u); };
  if (base.q21)
    m.q21 = [f = base.q21, a2](double u1, double u2) { return a2 * f(u1, u2); };
  if (base.q12)
    m.q12 = [f = base.q12, a1](double u1, double u2) { return a1 * f(u1, u2); };
  if (base.q1_sv) m.q1_sv = [f = base.q1_sv, a1](double s) { return a1 * f(s); };
  if (base.q2_sv) m.q2_sv = [f = base.q2_sv, a2](double s) { return a2 * f(s); };
  if (base.q21_sv)
    m.q21_sv = [f = base.q21_sv, a2](double s1, double s2) { return a2 * f(s1, s2); };
  if (base.q12_sv)
    m.q12_sv = [f = base.q12_sv, a1](double s1, double s2) { return a1 * f(s1, s2); };
  if (base.density) {
    m.density = [f = base.density, a1, a2](double y1, double y2) {
      return f(y1 / a1, y2 / a2) / (a1 * a2);
    };
    m.support = SupportRect{base.support.x1_lo * a1, base.support.x1_hi * a1,
                            base.support.x2_lo * a2, base.support.x2_hi * a2};
  }
  if (base.product_moment) m.product_moment = *base.product_moment * a1 * a2;
  if (base.fm_q1) m.fm_q1 = [f = base.fm_q1, a1](double u) { return a1 * f(u); };
  if (base.fm_q21)
    m.fm_q21 = [f = base.fm_q21, a2](double u1, double u2) {
      return a2 * f(u1, u2);
    };
  if (base.j12)
    m.j12 = [f = base.j12, a1](double u1, double u2) { return a1 * f(u1, u2); };
  if (base.j21)
    m.j21 = [f = base.j21, a2](double u1, double u2) { return a2 * f(u1, u2); };
  if (base.mu12) m.mu12 = [f = base.mu12, a1](double u) { return a1 * f(u); };
  if (base.mu21) m.mu21 = [f = base.mu21, a2](double u) { return a2 * f(u); };
  return m;
}

}  // namespace zenga
