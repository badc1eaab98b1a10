#ifndef ZENGA_NUMERICS_HPP
#define ZENGA_NUMERICS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "zenga/errors.hpp"

namespace zenga {

// Quantile levels are clipped into [kLevelEpsilon, 1 - kLevelEpsilon]; both
// Zenga surfaces are undefined at the exact endpoints.
inline constexpr double kLevelEpsilon = 1e-9;

inline std::pair<double, bool> clip_level(double u) {
  if (!(std::isfinite(u))) throw ValidationError("quantile level is not finite");
  if (u < kLevelEpsilon) return {kLevelEpsilon, true};
  if (u > 1.0 - kLevelEpsilon) return {1.0 - kLevelEpsilon, true};
  return {u, false};
}

// A point in the open unit square.  Out-of-range inputs are clipped and the
// clipping is recorded.
struct QuantilePoint {
  double u1;
  double u2;
  bool clipped;

  QuantilePoint(double a, double b) {
    auto [ca, fa] = clip_level(a);
    auto [cb, fb] = clip_level(b);
    u1 = ca;
    u2 = cb;
    clipped = fa || fb;
  }
};

// General-n sibling of QuantilePoint.
struct QuantileVector {
  std::vector<double> u;
  bool clipped = false;

  explicit QuantileVector(std::vector<double> levels) {
    if (levels.empty()) throw ValidationError("QuantileVector must be non-empty");
    u.reserve(levels.size());
    for (double v : levels) {
      auto [c, f] = clip_level(v);
      u.push_back(c);
      clipped = clipped || f;
    }
  }

  std::size_t size() const { return u.size(); }
};

// Axis-aligned integration domain.
struct IntervalRect {
  double x_lo, x_hi;
  double y_lo, y_hi;

  void validate() const {
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
      throw ValidationError("IntervalRect requires lower < upper on each axis");
  }
};

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 30;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth < 1)
      throw ValidationError("Tolerance requires abs_tol > 0, rel_tol > 0, max_depth >= 1");
  }
};

namespace detail {

// 15-point Gauss-Legendre rule on [-1, 1]: centre node plus seven symmetric
// pairs.  Exact for polynomials of degree <= 29.
inline constexpr double kGl15CentreWeight = 2.02578241925560898e-01;
inline constexpr std::array<double, 7> kGl15Node = {
    2.01194093997434514e-01, 3.94151347077563385e-01, 5.70972172608538830e-01,
    7.24417731360170070e-01, 8.48206583410427206e-01, 9.37273392400705951e-01,
    9.87992518020485377e-01};
inline constexpr std::array<double, 7> kGl15Weight = {
    1.98431485327111246e-01, 1.86161000015561878e-01, 1.66269205816993781e-01,
    1.39570677926153908e-01, 1.07159220467171773e-01, 7.03660474881080689e-02,
    3.07532419961186465e-02};

template <class F>
double gl15(F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double s = kGl15CentreWeight * f(m);
  for (std::size_t i = 0; i < kGl15Node.size(); ++i) {
    const double dx = h * kGl15Node[i];
    s += kGl15Weight[i] * (f(m - dx) + f(m + dx));
  }
  return s * h;
}

template <class F>
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(F& f, double a, double b, const Tolerance& tol)
      : f_(f), span_(b - a), tol_(tol) {}

  double run(double a, double b) {
    const double whole = gl15(f_, a, b);
    require_finite(whole, a, b);
    scale_ = std::abs(whole);
    const double value = refine(a, b, whole, 0);
    if (depth_exhausted_) {
      std::ostringstream msg;
      msg << "integrate_1d: max_depth=" << tol_.max_depth
          << " exhausted on [" << a << ", " << b << "], error estimate "
          << unconverged_;
      throw ConvergenceError(msg.str(), value, unconverged_);
    }
    return value;
  }

 private:
  double refine(double a, double b, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl15(f_, a, m);
    const double right = gl15(f_, m, b);
    require_finite(left, a, m);
    require_finite(right, m, b);
    const double better = left + right;
    const double err = std::abs(better - whole);
    const double budget =
        ((b - a) / span_) * std::max(tol_.abs_tol, tol_.rel_tol * scale_);
    // Panels whose refinement difference sits at rounding level (relative to
    // their own magnitude) cannot improve further; without this floor,
    // integrands that are themselves quadrature results would recurse to
    // max_depth chasing their evaluation noise.
    const double noise_floor = 5e-14 * (std::abs(left) + std::abs(right));
    if (err <= std::max(budget, noise_floor)) return better;
    if (depth >= tol_.max_depth) {
      depth_exhausted_ = true;
      unconverged_ += err;
      return better;
    }
    return refine(a, m, left, depth + 1) + refine(m, b, right, depth + 1);
  }

  void require_finite(double v, double a, double b) const {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand produced a non-finite value on [" << a << ", " << b << "]";
      throw DomainError(msg.str());
    }
  }

  F& f_;
  double span_;
  Tolerance tol_;
  double scale_ = 0.0;
  bool depth_exhausted_ = false;
  double unconverged_ = 0.0;
};

}  // namespace detail

// Adaptive composite Gauss-Legendre quadrature of f over [a, b].  Panels are
// bisected until the local error estimate fits within the proportional share
// of the tolerance budget.  Deterministic for fixed inputs.
template <class F>
double integrate_1d(F&& f, double a, double b, const Tolerance& tol = {}) {
  tol.validate();
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw ValidationError("integrate_1d requires finite bounds");
  if (a == b) return 0.0;
  if (a > b) throw ValidationError("integrate_1d requires a < b");
  detail::AdaptiveIntegrator<std::remove_reference_t<F>> integ(f, a, b, tol);
  return integ.run(a, b);
}

// Tensor product of integrate_1d panels over an axis-aligned rectangle.
template <class F2>
double integrate_2d(F2&& f, const IntervalRect& rect, const Tolerance& tol = {}) {
  tol.validate();
  rect.validate();
  Tolerance inner = tol;
  inner.abs_tol *= 0.1;
  inner.rel_tol *= 0.1;
  auto outer = [&](double x) {
    auto g = [&](double y) { return f(x, y); };
    return integrate_1d(g, rect.y_lo, rect.y_hi, inner);
  };
  return integrate_1d(outer, rect.x_lo, rect.x_hi, tol);
}

// Smallest x with g(x) >= target, for non-decreasing g.  A bracket is grown
// geometrically from bracket_hint, then bisected.  Returns the upper bracket
// end, so g(result) >= target always holds on exit.
template <class G>
double invert_monotone(G&& g, double target, double bracket_hint,
                       double x_tol = 1e-10) {
  if (!(std::isfinite(target) && std::isfinite(bracket_hint)))
    throw ValidationError("invert_monotone requires finite target and hint");
  if (!(x_tol > 0.0)) throw ValidationError("invert_monotone requires x_tol > 0");

  auto eval = [&](double x) {
    const double v = g(x);
    if (std::isnan(v)) {
      std::ostringstream msg;
      msg << "invert_monotone: g(" << x << ") is NaN";
      throw DomainError(msg.str());
    }
    return v;
  };

  double lo, hi;
  double step = std::max(1.0, std::abs(bracket_hint));
  if (eval(bracket_hint) >= target) {
    hi = bracket_hint;
    int expansions = 0;
    while (true) {
      const double probe = hi - step;
      if (!std::isfinite(probe) || ++expansions > 200)
        throw UnboundedSupportError(
            "invert_monotone: no lower bracket after 200 expansions");
      if (eval(probe) >= target) {
        hi = probe;
        step *= 2.0;
      } else {
        lo = probe;
        break;
      }
    }
  } else {
    lo = bracket_hint;
    int expansions = 0;
    while (true) {
      const double probe = lo + step;
      if (!std::isfinite(probe) || ++expansions > 200)
        throw UnboundedSupportError(
            "invert_monotone: no upper bracket after 200 expansions");
      if (eval(probe) >= target) {
        hi = probe;
        break;
      }
      lo = probe;
      step *= 2.0;
    }
  }

  for (int it = 0; it < 200 && (hi - lo) > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace detail {

// Power substitution p = 1 - (1 - a)(1 - v)^m mapping [0,1] onto [a,1] with
// nodes clustered at p = 1.  Quantile integrands of the families handled
// here blow up like (1-p)^(-gamma) as p -> 1 with gamma < 0.9; after the
// substitution with m = 10 the transformed integrand is continuous and
// vanishes at the endpoint.  Integrands are supplied in SURVIVAL form
// gs(s) = g(1 - s): s is computed multiplicatively, so there is no
// cancellation however close p gets to 1.
inline constexpr double kTailPower = 10.0;

// Integral of g over [a, 1], g given as gs(s) = g(1 - s).
template <class Gs>
double tail_integral_1d(Gs&& gs, double a, const Tolerance& tol) {
  if (!(a >= 0.0 && a < 1.0))
    throw ValidationError("tail_integral_1d requires 0 <= a < 1");
  const double width = 1.0 - a;
  auto h = [&](double v) {
    const double r = 1.0 - v;
    const double rm1 = std::pow(r, kTailPower - 1.0);
    const double s = width * rm1 * r;
    if (s <= 0.0) return 0.0;  // jacobian vanishes faster than gs blows up
    return gs(s) * kTailPower * width * rm1;
  };
  return integrate_1d(h, 0.0, 1.0, tol);
}

// Integral of g over [a1,1] x [a2,1], g given as gs(s1, s2).
template <class Gs2>
double tail_integral_2d(Gs2&& gs, double a1, double a2, const Tolerance& tol) {
  if (!(a1 >= 0.0 && a1 < 1.0 && a2 >= 0.0 && a2 < 1.0))
    throw ValidationError("tail_integral_2d requires 0 <= a < 1");
  const double w1 = 1.0 - a1;
  const double w2 = 1.0 - a2;
  auto h = [&](double v1, double v2) {
    const double r1 = 1.0 - v1;
    const double r2 = 1.0 - v2;
    const double r1m1 = std::pow(r1, kTailPower - 1.0);
    const double r2m1 = std::pow(r2, kTailPower - 1.0);
    const double s1 = w1 * r1m1 * r1;
    const double s2 = w2 * r2m1 * r2;
    if (s1 <= 0.0 || s2 <= 0.0) return 0.0;
    return gs(s1, s2) * kTailPower * w1 * r1m1 * kTailPower * w2 * r2m1;
  };
  return integrate_2d(h, IntervalRect{0.0, 1.0, 0.0, 1.0}, tol);
}

}  // namespace detail

}  // namespace zenga

#endif  // ZENGA_NUMERICS_HPP
