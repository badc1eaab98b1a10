#include "zenga/vbzc.hpp"

#include <cmath>

namespace zenga {

namespace {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

Fn2 survival_or_wrap(const Fn2& sv, const Fn2& plain) {
  if (sv) return sv;
  return [plain](double s1, double s2) { return plain(1.0 - s1, 1.0 - s2); };
}

}  // namespace

DirectionalPartials directional_partials(const BivariateQuantileModel& model,
                                         Direction direction,
                                         const QuantilePoint& u,
                                         const Tolerance& tol) {
  tol.validate();
  DirectionalPartials out{};
  const bool d12 = (direction == Direction::d12);
  const double own_level = d12 ? u.u1 : u.u2;
  const double cond_level = d12 ? u.u2 : u.u1;

  if (model.has_exact_partials()) {
    out.j = d12 ? model.j12(u.u1, u.u2) : model.j21(u.u1, u.u2);
    out.mu = d12 ? model.mu12(u.u2) : model.mu21(u.u1);
  } else {
    const Fn2& q = d12 ? model.q12 : model.q21;
    if (!q)
      throw CapabilityError("directional_partials: model '" + model.name +
                            "' lacks the conditional quantile for this direction");
    // Integration runs over the own level; the conditioning level is fixed.
    auto integrand = [&](double p) {
      return d12 ? q(p, cond_level) : q(cond_level, p);
    };
    out.j = integrate_1d(integrand, 0.0, own_level, tol);
    const Fn2 qs = survival_or_wrap(d12 ? model.q12_sv : model.q21_sv, q);
    const double cond_s = 1.0 - cond_level;
    auto integrand_sv = [&](double s) {
      return d12 ? qs(s, cond_s) : qs(cond_s, s);
    };
    out.mu = detail::tail_integral_1d(integrand_sv, 0.0, tol);
  }

  out.m_lower = out.j / own_level;
  out.m_upper = (out.mu - out.j) / (1.0 - own_level);
  return out;
}

VbzcPoint vbzc_components(const BivariateQuantileModel& model,
                          const QuantilePoint& u, const Tolerance& tol) {
  const DirectionalPartials p12 = directional_partials(model, Direction::d12, u, tol);
  const DirectionalPartials p21 = directional_partials(model, Direction::d21, u, tol);
  if (!(p12.m_upper > 0.0) || !(p21.m_upper > 0.0))
    throw DegenerateDenominatorError("vbzc_components: upper partial mean is zero");
  return VbzcPoint{1.0 - p12.m_lower / p12.m_upper,
                   1.0 - p21.m_lower / p21.m_upper, u};
}

std::pair<double, double> pareto_vbzc_printed(double c, const QuantilePoint& u) {
  ParetoUnitParams{c}.validate();
  auto component = [c](double a, double b) {
    // Literal transcription of the printed display with levels (a, b); the
    // second component is the same expression with the roles swapped.
    const double sa = std::pow(1.0 - a, 1.0 / c);
    const double sb = std::pow(1.0 - b, 1.0 / c);
    const double num =
        (1.0 - a) *
        (sa * ((c - 1.0) * sb * a + (1.0 - c) * a + c) + c * a - c);
    const double den =
        a * (((c - 1.0) * sb - c + 1.0) * sa + c) * (a - 1.0);
    return 1.0 - num / den;
  };
  return {component(u.u1, u.u2), component(u.u2, u.u1)};
}

std::vector<SlicePoint> reconstruct_conditional_quantile(
    const std::vector<SlicePoint>& i12_slice, double mu12) {
  const std::size_t n = i12_slice.size();
  if (n < 3)
    throw ValidationError("reconstruct_conditional_quantile needs >= 3 points");
  if (!(mu12 > 0.0))
    throw ValidationError("reconstruct_conditional_quantile needs mu12 > 0");
  std::vector<double> u(n), j(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double uk = i12_slice[k].u1;
    const double ik = i12_slice[k].value;
    if (k > 0 && !(uk > u[k - 1]))
      throw ValidationError("slice levels must be strictly increasing");
    if (!(uk > 0.0 && uk < 1.0))
      throw ValidationError("slice levels must lie in (0,1)");
    if (!(ik >= 0.0 && ik < 1.0))
      throw ValidationError("slice I values must lie in [0,1)");
    const double denom = 1.0 - uk * ik;
    if (!(denom > 0.0))
      throw InversionError("reconstruction denominator 1 - u1*I12 is not positive");
    u[k] = uk;
    j[k] = mu12 * uk * (1.0 - ik) / denom;
  }

  std::vector<SlicePoint> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double q;
    if (k == 0) {
      const double h = u[1] - u[0];
      q = (-3.0 * j[0] + 4.0 * j[1] - j[2]) / (2.0 * h);
    } else if (k + 1 == n) {
      const double h = u[n - 1] - u[n - 2];
      q = (3.0 * j[n - 1] - 4.0 * j[n - 2] + j[n - 3]) / (2.0 * h);
    } else {
      q = (j[k + 1] - j[k - 1]) / (u[k + 1] - u[k - 1]);
    }
    out[k] = SlicePoint{u[k], q};
  }
  return out;
}

SurfaceGrid evaluate_vbzc_surface(const BivariateQuantileModel& model,
                                  const std::vector<double>& u1_levels,
                                  const std::vector<double>& u2_levels,
                                  const Tolerance& tol) {
  tol.validate();
  if (u1_levels.empty() || u2_levels.empty())
    throw ValidationError("evaluate_vbzc_surface: empty level lists");
  SurfaceGrid grid;
  grid.u1_levels = u1_levels;
  grid.u2_levels = u2_levels;
  grid.measures = {MeasureTag::I12, MeasureTag::I21};
  grid.values.emplace_back(u1_levels.size(), u2_levels.size());
  grid.values.emplace_back(u1_levels.size(), u2_levels.size());
  grid.provenance = Provenance::quadrature;
  grid.model_label = model.name;
  for (std::size_t i = 0; i < u1_levels.size(); ++i)
    for (std::size_t j = 0; j < u2_levels.size(); ++j) {
      const VbzcPoint p =
          vbzc_components(model, QuantilePoint(u1_levels[i], u2_levels[j]), tol);
      grid.values[0].at(i, j) = p.i12;
      grid.values[1].at(i, j) = p.i21;
    }
  grid.validate();
  return grid;
}

}  // namespace zenga
