#include "zenga/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace zenga {

std::string to_string(MeasureTag tag) {
  switch (tag) {
    case MeasureTag::Z: return "Z";
    case MeasureTag::I: return "I";
    case MeasureTag::I12: return "I12";
    case MeasureTag::I21: return "I21";
    case MeasureTag::L: return "L";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::quadrature: return "quadrature";
    case Provenance::empirical: return "empirical";
  }
  return "?";
}

MeasureTag measure_tag_from_string(const std::string& s) {
  if (s == "Z") return MeasureTag::Z;
  if (s == "I") return MeasureTag::I;
  if (s == "I12") return MeasureTag::I12;
  if (s == "I21") return MeasureTag::I21;
  if (s == "L") return MeasureTag::L;
  throw ValidationError("unknown measure tag: " + s);
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "analytic") return Provenance::analytic;
  if (s == "quadrature") return Provenance::quadrature;
  if (s == "empirical") return Provenance::empirical;
  throw ValidationError("unknown provenance: " + s);
}

void SurfaceGrid::validate() const {
  if (u1_levels.empty() || u2_levels.empty())
    throw ValidationError("SurfaceGrid: empty level lists");
  for (double u : u1_levels)
    if (!(u > 0.0 && u < 1.0)) throw ValidationError("SurfaceGrid: u1 level outside (0,1)");
  for (double u : u2_levels)
    if (!(u > 0.0 && u < 1.0)) throw ValidationError("SurfaceGrid: u2 level outside (0,1)");
  if (measures.empty() || measures.size() != values.size())
    throw ValidationError("SurfaceGrid: measures/values mismatch");
  constexpr double slack = 1e-9;
  for (std::size_t m = 0; m < values.size(); ++m) {
    const GridMatrix& v = values[m];
    if (v.rows != u1_levels.size() || v.cols != u2_levels.size())
      throw ValidationError("SurfaceGrid: matrix dimensions do not match levels");
    for (double x : v.data) {
      if (std::isnan(x)) continue;  // missing cell
      if (x < -slack || x > 1.0 + slack) {
        std::ostringstream msg;
        msg << "SurfaceGrid: " << to_string(measures[m]) << " value " << x
            << " outside [0,1] beyond slack";
        throw ValidationError(msg.str());
      }
    }
  }
}

std::vector<double> linspace_levels(double lo, double hi, std::size_t count) {
  if (count < 1) throw ValidationError("linspace_levels requires count >= 1");
  if (!(lo > 0.0 && hi < 1.0 && lo <= hi))
    throw ValidationError("linspace_levels requires 0 < lo <= hi < 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    double v = lo + step * static_cast<double>(i);
    // snap accumulated rounding onto the 1e-9 decimal lattice so canonical
    // grids read 0.3, not 0.30000000000000004
    const double snapped = std::round(v * 1e9) / 1e9;
    if (std::abs(snapped - v) <= 1e-12) v = snapped;
    out[i] = v;
  }
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------
// Capability adapters.

namespace {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

Fn1 survival_form(const Fn1& sv, const Fn1& plain) {
  if (sv) return sv;
  return [plain](double s) { return plain(1.0 - s); };
}

Fn2 survival_form(const Fn2& sv, const Fn2& plain) {
  if (sv) return sv;
  return [plain](double s1, double s2) { return plain(1.0 - s1, 1.0 - s2); };
}

void require_product_quantile(const BivariateQuantileModel& m) {
  if (!m.q1 || !m.q21)
    throw CapabilityError("model '" + m.name + "' lacks Q1/Q21 quantiles");
}

// Levels at or beyond the clip boundary stand for the closed endpoint 1;
// the integrals are then taken all the way to 1 through the tail
// substitution rather than stopping at 1 - epsilon.
bool snapped_to_one(double u) { return u >= 1.0 - 2.0 * kLevelEpsilon; }

struct ProductQuantile {
  Fn2 plain;  // g(p1, p2)
  Fn2 sv;     // g(1 - s1, 1 - s2)

  static ProductQuantile of(const BivariateQuantileModel& m) {
    require_product_quantile(m);
    ProductQuantile g;
    g.plain = [q1 = m.q1, q21 = m.q21](double p1, double p2) {
      return q1(p1) * q21(p1, p2);
    };
    const Fn1 q1s = survival_form(m.q1_sv, m.q1);
    const Fn2 q21s = survival_form(m.q21_sv, m.q21);
    g.sv = [q1s, q21s](double s1, double s2) {
      return q1s(s1) * q21s(s1, s2);
    };
    return g;
  }
};

// Integral of the product quantile over [0,b1] x [0,b2], routing any axis
// whose bound stands for 1 through the tail substitution.
double lower_box_integral(const ProductQuantile& g, double b1, double b2,
                          const Tolerance& tol) {
  const bool t1 = snapped_to_one(b1);
  const bool t2 = snapped_to_one(b2);
  Tolerance inner = tol;
  inner.abs_tol *= 0.1;
  inner.rel_tol *= 0.1;
  if (!t1 && !t2)
    return integrate_2d(g.plain, IntervalRect{0.0, b1, 0.0, b2}, tol);
  if (t1 && t2)
    return detail::tail_integral_2d(g.sv, 0.0, 0.0, tol);
  if (t1) {
    auto outer = [&](double p2) {
      auto gs = [&](double s1) { return g.sv(s1, 1.0 - p2); };
      return detail::tail_integral_1d(gs, 0.0, inner);
    };
    return integrate_1d(outer, 0.0, b2, tol);
  }
  auto outer = [&](double p1) {
    auto gs = [&](double s2) { return g.sv(1.0 - p1, s2); };
    return detail::tail_integral_1d(gs, 0.0, inner);
  };
  return integrate_1d(outer, 0.0, b1, tol);
}

}  // namespace

// ---------------------------------------------------------------------------
// Numeric first-moment machinery.

namespace {

// Breakpoints covering [lo, hi] with a short first panel and geometric
// growth; resolves integrands whose mass concentrates near lo even when the
// support spans many orders of magnitude.
std::vector<double> log_spaced_breaks(double lo, double hi, std::size_t panels) {
  const double span = hi - lo;
  std::vector<double> breaks;
  breaks.reserve(panels + 1);
  breaks.push_back(lo);
  const double first = 1e-8;  // relative width of the innermost panel
  const double ratio =
      std::pow(1.0 / first, 1.0 / static_cast<double>(panels - 1));
  double rel = first;
  for (std::size_t k = 1; k < panels; ++k) {
    breaks.push_back(lo + span * rel);
    rel *= ratio;
  }
  breaks.push_back(hi);
  return breaks;
}

// Composite GL15 over a fixed breakpoint layout.  No adaptivity: the result
// is a smooth function of any parameter of f, which keeps outer adaptive
// quadratures free of refinement noise.
template <class F>
double fixed_panel_integral(F&& f, const std::vector<double>& breaks) {
  double acc = 0.0;
  for (std::size_t k = 1; k < breaks.size(); ++k)
    acc += detail::gl15(f, breaks[k - 1], breaks[k]);
  if (!std::isfinite(acc))
    throw DomainError("first-moment integrand produced a non-finite value");
  return acc;
}

}  // namespace

struct FirstMomentQuantiles::CumTable {
  std::vector<double> x;    // panel edges
  std::vector<double> cum;  // cumulative integral at edges, cum[0] = 0
  std::function<double(double, double)> segment;  // integral over [a, b]

  double total() const { return cum.back(); }

  // Smallest x with cumulative mass >= frac * total.
  double quantile(double frac) const {
    const double target = frac * total();
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    std::size_t i = static_cast<std::size_t>(it - cum.begin());
    if (i == 0) i = 1;
    if (i >= cum.size()) i = cum.size() - 1;
    double lo = x[i - 1], hi = x[i];
    const double base = cum[i - 1];
    const double width_tol = std::max(1e-13 * (hi - lo), 1e-15 * std::abs(hi));
    for (int it2 = 0; it2 < 80 && (hi - lo) > width_tol; ++it2) {
      const double mid = 0.5 * (lo + hi);
      if (base + segment(x[i - 1], mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }

  static CumTable build(std::function<double(double)> integrand, double lo,
                        double hi, std::size_t panels, const Tolerance& tol) {
    CumTable t;
    t.x = log_spaced_breaks(lo, hi, panels);
    t.cum.assign(t.x.size(), 0.0);
    Tolerance panel_tol = tol;
    panel_tol.abs_tol = std::max(tol.abs_tol, 1e-13);
    panel_tol.rel_tol = std::max(tol.rel_tol, 1e-10);
    for (std::size_t i = 1; i < t.x.size(); ++i)
      t.cum[i] = t.cum[i - 1] +
                 integrate_1d(integrand, t.x[i - 1], t.x[i], panel_tol);
    t.segment = [integrand, panel_tol](double a, double b) {
      if (b <= a) return 0.0;
      return integrate_1d(integrand, a, b, panel_tol);
    };
    return t;
  }
};

struct FirstMomentQuantiles::Slice::Table {
  FirstMomentQuantiles::CumTable tab;
};

namespace {
constexpr std::size_t kFmPanels = 64;
constexpr std::size_t kFmInnerPanels = 48;
}

FirstMomentQuantiles::FirstMomentQuantiles(const BivariateQuantileModel& model,
                                           const Tolerance& tol)
    : density_(model.density), support_(model.support), tol_(tol) {
  if (!density_)
    throw CapabilityError("model '" + model.name +
                          "' has no density; first-moment numeric path needs one");
  if (!support_.finite())
    throw CapabilityError(
        "model '" + model.name +
        "' has unbounded support; numeric first-moment path needs finite bounds");
  const auto inner_breaks =
      log_spaced_breaks(support_.x2_lo, support_.x2_hi, kFmInnerPanels);
  auto weighted_x2_mass = [density = density_, inner_breaks](double t1) {
    auto f = [&](double t2) { return t2 * density(t1, t2); };
    return t1 * fixed_panel_integral(f, inner_breaks);
  };
  marginal_ = std::make_shared<const CumTable>(CumTable::build(
      weighted_x2_mass, support_.x1_lo, support_.x1_hi, kFmPanels, tol_));
  mu_ = marginal_->total();
  if (!(mu_ > 0.0))
    throw DegenerateDenominatorError(
        "first-moment construction: product moment is not positive");
  if (model.product_moment && *model.product_moment > 0.0) {
    const double rel = std::abs(mu_ - *model.product_moment) / *model.product_moment;
    if (rel > 0.05) {
      std::fprintf(stderr,
                   "zenga: warning: quadrature product moment %.6g deviates "
                   "from declared %.6g (support truncation?)\n",
                   mu_, *model.product_moment);
    }
  }
}

double FirstMomentQuantiles::marginal_quantile(double u1) const {
  auto [u, clipped] = clip_level(u1);
  (void)clipped;
  return marginal_->quantile(u);
}

FirstMomentQuantiles::Slice FirstMomentQuantiles::conditional_slice(double u1) const {
  auto [u, clipped] = clip_level(u1);
  (void)clipped;
  const double q = marginal_->quantile(u);
  if (q >= support_.x1_hi)
    throw ConditioningError(
        "first-moment conditional slice: marginal quantile at the support end");
  const auto tail_breaks = log_spaced_breaks(q, support_.x1_hi, kFmInnerPanels);
  auto weighted_x1_tail = [density = density_, tail_breaks](double t2) {
    auto f = [&](double t1) { return t1 * density(t1, t2); };
    return t2 * fixed_panel_integral(f, tail_breaks);
  };
  auto table = std::make_shared<Slice::Table>();
  table->tab = CumTable::build(weighted_x1_tail, support_.x2_lo, support_.x2_hi,
                               kFmPanels, tol_);
  if (!(table->tab.total() > 0.0))
    throw ConditioningError(
        "first-moment conditional slice: zero mass above the marginal quantile");
  Slice s;
  s.q1fm_ = q;
  s.table_ = std::move(table);
  return s;
}

double FirstMomentQuantiles::Slice::quantile(double u2) const {
  auto [u, clipped] = clip_level(u2);
  (void)clipped;
  return table_->tab.quantile(u);
}

double FirstMomentQuantiles::conditional_quantile(double u1, double u2) const {
  return conditional_slice(u1).quantile(u2);
}

// ---------------------------------------------------------------------------
// Moment-based surface Z and index.

double zenga_Z(const BivariateQuantileModel& model, const QuantilePoint& u,
               const Tolerance& tol) {
  tol.validate();
  require_product_quantile(model);
  const double num = model.q1(u.u1) * model.q21(u.u1, u.u2);
  double den;
  if (model.has_fm_closed_form()) {
    den = model.fm_q1(u.u1) * model.fm_q21(u.u1, u.u2);
  } else {
    FirstMomentQuantiles fm(model, tol);
    den = fm.marginal_quantile(u.u1) * fm.conditional_quantile(u.u1, u.u2);
  }
  if (!(den > 0.0))
    throw DegenerateDenominatorError("zenga_Z: non-positive first-moment product");
  return 1.0 - num / den;
}

double zenga_Z_univariate(const std::function<double(double)>& q,
                          const std::function<double(double)>& fm_q, double u) {
  auto [uu, clipped] = clip_level(u);
  (void)clipped;
  const double den = fm_q(uu);
  if (!(den > 0.0))
    throw DegenerateDenominatorError("zenga_Z_univariate: non-positive Q^(1)");
  return 1.0 - q(uu) / den;
}

namespace {

// Double integral over the clipped square, with a change of variables that
// clusters nodes at the u = 1-eps edges where the integrands of this module
// develop boundary layers.
template <class F2>
double clipped_square_integral(F2&& f, const Tolerance& tol) {
  const double eps = kLevelEpsilon;
  const double width = 1.0 - 2.0 * eps;
  const double m = detail::kTailPower;
  auto h = [&](double v1, double v2) {
    const double r1 = 1.0 - v1;
    const double r2 = 1.0 - v2;
    const double r1m1 = std::pow(r1, m - 1.0);
    const double r2m1 = std::pow(r2, m - 1.0);
    const double u1 = 1.0 - eps - width * r1m1 * r1;
    const double u2 = 1.0 - eps - width * r2m1 * r2;
    return f(u1, u2) * m * width * r1m1 * m * width * r2m1;
  };
  return integrate_2d(h, IntervalRect{0.0, 1.0, 0.0, 1.0}, tol);
}

}  // namespace

double zenga_index_xi(const BivariateQuantileModel& model, const Tolerance& tol) {
  tol.validate();
  require_product_quantile(model);
  if (model.has_fm_closed_form()) {
    auto f = [&](double u1, double u2) {
      const double den = model.fm_q1(u1) * model.fm_q21(u1, u2);
      return 1.0 - model.q1(u1) * model.q21(u1, u2) / den;
    };
    return clipped_square_integral(f, tol);
  }
  // Numeric fallback; builds a conditional tabulation per abscissa, which is
  // accurate but expensive.
  FirstMomentQuantiles fm(model, tol);
  auto f = [&](double u1, double u2) {
    const double den = fm.marginal_quantile(u1) * fm.conditional_quantile(u1, u2);
    return 1.0 - model.q1(u1) * model.q21(u1, u2) / den;
  };
  return clipped_square_integral(f, tol);
}

// ---------------------------------------------------------------------------
// Quantile-based machinery.

PartialMeans partial_product_means(const BivariateQuantileModel& model,
                                   const QuantilePoint& u, const Tolerance& tol) {
  tol.validate();
  const ProductQuantile g = ProductQuantile::of(model);
  const double lower =
      lower_box_integral(g, u.u1, u.u2, tol) / (u.u1 * u.u2);
  const double upper = detail::tail_integral_2d(g.sv, u.u1, u.u2, tol) /
                       ((1.0 - u.u1) * (1.0 - u.u2));
  return PartialMeans{lower, upper, Provenance::quadrature};
}

double zenga_I(const BivariateQuantileModel& model, const QuantilePoint& u,
               const Tolerance& tol) {
  const PartialMeans pm = partial_product_means(model, u, tol);
  if (!(pm.upper > 0.0))
    throw DegenerateDenominatorError("zenga_I: upper partial mean is zero");
  return 1.0 - pm.lower / pm.upper;
}

double zenga_I_univariate(const std::function<double(double)>& q, double u,
                          const Tolerance& tol) {
  tol.validate();
  auto [uu, clipped] = clip_level(u);
  (void)clipped;
  const double lower = integrate_1d(q, 0.0, uu, tol) / uu;
  auto gs = [&](double s) { return q(1.0 - s); };
  const double upper = detail::tail_integral_1d(gs, uu, tol) / (1.0 - uu);
  if (!(upper > 0.0))
    throw DegenerateDenominatorError("zenga_I_univariate: upper mean is zero");
  return 1.0 - lower / upper;
}

namespace {

// Nested integral of the product quantile over the box with per-axis bounds
// [lo_i, hi_i]; axes whose upper bound is 1 go through the tail substitution.
double nested_box_integral(
    const std::function<double(std::span<const double>)>& g,
    const std::vector<double>& lo, const std::vector<double>& hi,
    std::vector<double>& point, std::size_t axis, const Tolerance& tol) {
  Tolerance inner = tol;
  inner.abs_tol *= 0.1;
  inner.rel_tol *= 0.1;
  auto eval = [&](double p) {
    point[axis] = p;
    if (axis + 1 == lo.size()) return g(std::span<const double>(point));
    return nested_box_integral(g, lo, hi, point, axis + 1, inner);
  };
  if (hi[axis] >= 1.0) {
    auto gs = [&](double s) { return eval(1.0 - s); };
    return detail::tail_integral_1d(gs, lo[axis], tol);
  }
  return integrate_1d(eval, lo[axis], hi[axis], tol);
}

}  // namespace

double zenga_I_nd(const std::function<double(std::span<const double>)>& product_quantile,
                  const QuantileVector& u, const Tolerance& tol, bool quiet) {
  tol.validate();
  const std::size_t n = u.size();
  if (n >= 4 && !quiet)
    std::fprintf(stderr,
                 "zenga: note: n=%zu nested quadrature has geometric cost\n", n);
  std::vector<double> lo(n, 0.0), hi(u.u);
  std::vector<double> point(n, 0.0);
  double lower_norm = 1.0, upper_norm = 1.0;
  for (double ui : u.u) {
    lower_norm *= ui;
    upper_norm *= (1.0 - ui);
  }
  const double lower =
      nested_box_integral(product_quantile, lo, hi, point, 0, tol) / lower_norm;
  std::vector<double> hi1(n, 1.0);
  const double upper =
      nested_box_integral(product_quantile, u.u, hi1, point, 0, tol) / upper_norm;
  if (!(upper > 0.0))
    throw DegenerateDenominatorError("zenga_I_nd: upper partial mean is zero");
  return 1.0 - lower / upper;
}

// ---------------------------------------------------------------------------
// x-space measure A.

double zenga_A_xspace(const BivariateQuantileModel& model, double x1, double x2,
                      const Tolerance& tol) {
  tol.validate();
  if (!model.density)
    throw CapabilityError("zenga_A_xspace: model '" + model.name +
                          "' has no density");
  if (!model.support.finite())
    throw CapabilityError(
        "zenga_A_xspace: finite support bounds required for quadrature");
  const SupportRect& s = model.support;
  if (!(x1 > s.x1_lo && x1 < s.x1_hi && x2 > s.x2_lo && x2 < s.x2_hi))
    throw ConditioningError(
        "zenga_A_xspace: point does not split the support into two orthants "
        "of positive mass");
  auto f = model.density;
  auto weighted = [&](double t1, double t2) { return t1 * t2 * f(t1, t2); };
  const IntervalRect lower_rect{s.x1_lo, x1, s.x2_lo, x2};
  const IntervalRect upper_rect{x1, s.x1_hi, x2, s.x2_hi};
  const double mass_lo = integrate_2d(f, lower_rect, tol);
  const double mass_hi = integrate_2d(f, upper_rect, tol);
  constexpr double tiny = 1e-12;
  if (!(mass_lo > tiny) || !(mass_hi > tiny))
    throw ConditioningError("zenga_A_xspace: zero-mass orthant");
  const double mu_lo = integrate_2d(weighted, lower_rect, tol) / mass_lo;
  const double mu_hi = integrate_2d(weighted, upper_rect, tol) / mass_hi;
  if (!(mu_hi > 0.0))
    throw DegenerateDenominatorError("zenga_A_xspace: upper moment is zero");
  return 1.0 - mu_lo / mu_hi;
}

double pareto_unit_A_printed(double c, double x1, double x2) {
  // Literal transcription, cancelling factor and all.
  const double s = x1 + x2 - 1.0;
  const double num1 = std::pow(x2 - 1.0, 1.0 - c) - std::pow(s, 1.0 - c);
  const double num2 = std::pow(x1, 1.0 - c) - std::pow(s, 1.0 - c);
  return 1.0 - num1 * num2 / num2;
}

// ---------------------------------------------------------------------------
// Lorenz surface and bridge.

double lorenz_surface(const BivariateQuantileModel& model, const QuantilePoint& u,
                      const Tolerance& tol) {
  tol.validate();
  const ProductQuantile g = ProductQuantile::of(model);
  const double mu_q = detail::tail_integral_2d(g.sv, 0.0, 0.0, tol);
  if (!(mu_q > 0.0))
    throw DegenerateDenominatorError("lorenz_surface: zero product moment");
  return lower_box_integral(g, u.u1, u.u2, tol) / mu_q;
}

double zenga_I_from_lorenz(double L_uu, double L_1u, double L_u1,
                           const QuantilePoint& u) {
  for (double v : {L_uu, L_1u, L_u1})
    if (!(v >= 0.0 && v <= 1.0 + 1e-9))
      throw ValidationError("zenga_I_from_lorenz: Lorenz values must lie in [0,1]");
  const double bracket = 1.0 - L_1u - L_u1 + L_uu;
  if (!(bracket > 0.0))
    throw DegenerateDenominatorError("zenga_I_from_lorenz: zero bracket term");
  return 1.0 -
         ((1.0 - u.u1) * (1.0 - u.u2) * L_uu) / (u.u1 * u.u2 * bracket);
}

double synthetic_index_I(const BivariateQuantileModel& model, const Tolerance& tol) {
  tol.validate();
  const ProductQuantile g = ProductQuantile::of(model);
  Tolerance inner = tol;
  inner.abs_tol = std::max(tol.abs_tol, 1e-9);
  inner.rel_tol = std::max(tol.rel_tol, 1e-7);
  auto f = [&](double u1, double u2) {
    const double lower =
        lower_box_integral(g, u1, u2, inner) / (u1 * u2);
    const double upper = detail::tail_integral_2d(g.sv, u1, u2, inner) /
                         ((1.0 - u1) * (1.0 - u2));
    if (!(upper > 0.0))
      throw DegenerateDenominatorError("synthetic_index_I: upper mean is zero");
    return 1.0 - lower / upper;
  };
  Tolerance outer = tol;
  outer.abs_tol = std::max(tol.abs_tol, 1e-7);
  outer.rel_tol = std::max(tol.rel_tol, 1e-6);
  return clipped_square_integral(f, outer);
}

// ---------------------------------------------------------------------------

MonotonicityReport monotonicity_diagnostic(const BivariateQuantileModel& model,
                                           const std::vector<double>& u1_levels,
                                           const std::vector<double>& u2_levels) {
  require_product_quantile(model);
  if (u1_levels.empty() || u2_levels.empty())
    throw ValidationError("monotonicity_diagnostic: empty lattice");
  MonotonicityReport report;
  const std::size_t n1 = u1_levels.size();
  const std::size_t n2 = u2_levels.size();
  GridMatrix t(n1, n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      t.at(i, j) = model.q1(u1_levels[i]) * model.q21(u1_levels[i], u2_levels[j]);
  for (std::size_t i = 0; i + 1 < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      if (t.at(i + 1, j) < t.at(i, j)) {
        report.passed = false;
        report.violations.push_back({1, i, j, t.at(i, j) - t.at(i + 1, j)});
      }
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j + 1 < n2; ++j)
      if (t.at(i, j + 1) < t.at(i, j)) {
        report.passed = false;
        report.violations.push_back({2, i, j, t.at(i, j) - t.at(i, j + 1)});
      }
  return report;
}

SurfaceGrid evaluate_surface(const BivariateQuantileModel& model, MeasureTag measure,
                             const std::vector<double>& u1_levels,
                             const std::vector<double>& u2_levels,
                             const Tolerance& tol) {
  tol.validate();
  if (u1_levels.empty() || u2_levels.empty())
    throw ValidationError("evaluate_surface: empty level lists");
  SurfaceGrid grid;
  grid.u1_levels = u1_levels;
  grid.u2_levels = u2_levels;
  grid.measures = {measure};
  grid.values.emplace_back(u1_levels.size(), u2_levels.size());
  grid.model_label = model.name;

  if (measure == MeasureTag::Z) {
    grid.provenance =
        model.has_fm_closed_form() ? Provenance::analytic : Provenance::quadrature;
    if (model.has_fm_closed_form()) {
      for (std::size_t i = 0; i < u1_levels.size(); ++i)
        for (std::size_t j = 0; j < u2_levels.size(); ++j)
          grid.values[0].at(i, j) =
              zenga_Z(model, QuantilePoint(u1_levels[i], u2_levels[j]), tol);
    } else {
      // Build the tabulation once, and one conditional slice per u1 level.
      FirstMomentQuantiles fm(model, tol);
      for (std::size_t i = 0; i < u1_levels.size(); ++i) {
        const double u1 = u1_levels[i];
        const double q1fm = fm.marginal_quantile(u1);
        const auto slice = fm.conditional_slice(u1);
        for (std::size_t j = 0; j < u2_levels.size(); ++j) {
          const double u2 = u2_levels[j];
          const double num = model.q1(u1) * model.q21(u1, u2);
          const double den = q1fm * slice.quantile(u2);
          if (!(den > 0.0))
            throw DegenerateDenominatorError(
                "evaluate_surface: non-positive first-moment product");
          grid.values[0].at(i, j) = 1.0 - num / den;
        }
      }
    }
  } else if (measure == MeasureTag::I || measure == MeasureTag::L) {
    grid.provenance = Provenance::quadrature;
    for (std::size_t i = 0; i < u1_levels.size(); ++i)
      for (std::size_t j = 0; j < u2_levels.size(); ++j) {
        const QuantilePoint u(u1_levels[i], u2_levels[j]);
        grid.values[0].at(i, j) = (measure == MeasureTag::I)
                                      ? zenga_I(model, u, tol)
                                      : lorenz_surface(model, u, tol);
      }
  } else {
    throw ValidationError(
        "evaluate_surface handles Z, I and L; use evaluate_vbzc_surface for the pair");
  }
  grid.validate();
  return grid;
}

}  // namespace zenga
