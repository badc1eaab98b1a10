#ifndef ZENGA_VBZC_HPP
#define ZENGA_VBZC_HPP

#include <utility>
#include <vector>

#include "zenga/models.hpp"
#include "zenga/numerics.hpp"
#include "zenga/surfaces.hpp"

namespace zenga {

enum class Direction { d12, d21 };

// Point of the vector-valued bivariate Zenga curve.
struct VbzcPoint {
  double i12;
  double i21;
  QuantilePoint at;
};

// Directional building blocks: J = integral of the conditional quantile up to
// the level, mu = its full integral (the conditional mean), and the derived
// partial means.
struct DirectionalPartials {
  double j;
  double mu;
  double m_lower;
  double m_upper;
};

// J, mu, M-, M+ for one direction.  Models carrying exact partial-integral
// capabilities (empirical tabulations) are served from those; everything
// else goes through quadrature, with a tail substitution for the mu integral
// whose integrand may blow up at level 1.
DirectionalPartials directional_partials(const BivariateQuantileModel& model,
                                         Direction direction,
                                         const QuantilePoint& u,
                                         const Tolerance& tol = {});

// (I12, I21) = (1 - M-12/M+12, 1 - M-21/M+21).
VbzcPoint vbzc_components(const BivariateQuantileModel& model,
                          const QuantilePoint& u, const Tolerance& tol = {});

// Literal evaluation of the closed forms printed for the unit-scale Pareto
// family.  They evaluate above 1 at interior points (observed value
// 2 - I12 at the symmetric reference point) and are quarantined here as a
// documented cross-check; no pipeline uses them.
std::pair<double, double> pareto_vbzc_printed(double c, const QuantilePoint& u);

struct SlicePoint {
  double u1;
  double value;
};

// Reconstruct the conditional quantile slice Q12(., u2) from I12 values at a
// fixed u2 and the conditional mean mu12(u2):
//   J12 = mu12 u1 (1 - I12) / (1 - u1 I12),  Q12 = dJ12/du1.
// The derivative uses central differences with second-order one-sided
// stencils at the slice ends; the step is the slice spacing.
std::vector<SlicePoint> reconstruct_conditional_quantile(
    const std::vector<SlicePoint>& i12_slice, double mu12);

// Lattice evaluation of the pair (I12, I21); missing-cell policy does not
// apply here (parametric models are total on the open square).
SurfaceGrid evaluate_vbzc_surface(const BivariateQuantileModel& model,
                                  const std::vector<double>& u1_levels,
                                  const std::vector<double>& u2_levels,
                                  const Tolerance& tol = {});

}  // namespace zenga

#endif  // ZENGA_VBZC_HPP
