#ifndef ZENGA_ESTIMATOR_HPP
#define ZENGA_ESTIMATOR_HPP

#include <vector>

#include "zenga/models.hpp"
#include "zenga/surfaces.hpp"
#include "zenga/vbzc.hpp"

namespace zenga {

// Upper-tail subsample: the non-conditioned coordinate of all rows whose
// conditioning coordinate strictly exceeds its empirical quantile.
struct TailSubsample {
  Direction direction;
  double threshold_level;
  std::vector<double> values;  // sorted ascending

  std::size_t size() const { return values.size(); }
};

// Type-1 empirical quantile (left-continuous inverse): the ceil(n u)-th
// order statistic.  `values` must be sorted ascending and non-empty.
double empirical_quantile(const std::vector<double>& values, double u);

// Strict-inequality tail filter at the conditioning coordinate's empirical
// u-quantile.  Direction d12 conditions on X2 and collects X1 values.
// An empty result throws ConditioningError (u too high for n, or ties).
TailSubsample tail_subsample(const BivariateSample& sample, Direction direction,
                             double u);

// Empirical lower partial mean
//   (1/u1) [ (1/n_u) sum_{i<=k} X_(i) + (u1 - k/n_u) X_(k+1) ],  k = floor(n_u u1).
// The fractional term is skipped when its coefficient vanishes, so k = n_u
// never reads past the end.
double estimate_lower_partial_mean(const TailSubsample& sub, double u1);

// Plug-in estimator of the vector-valued curve at one point.
VbzcPoint estimate_vbzc(const BivariateSample& sample, const QuantilePoint& u);

// An estimated surface is a SurfaceGrid with empirical provenance and the
// sample size recorded.
using EstimatedSurface = SurfaceGrid;

// Lattice of estimates; cells whose tail subsample is empty are marked
// missing (NaN), never zero.
EstimatedSurface estimate_surface(const BivariateSample& sample,
                                  const std::vector<double>& u1_levels,
                                  const std::vector<double>& u2_levels);

// Fixed-u1 column or fixed-u2 row of a surface, as a one-row grid.
// `fix_u1 = true` fixes u1 = at and varies u2.
SurfaceGrid extract_slice(const SurfaceGrid& grid, bool fix_u1, double at);

// Model view over a sample: marginal and conditional quantiles are the
// empirical step functions, and the exact directional partial integrals are
// provided so vbzc_components never integrates a step function numerically.
BivariateQuantileModel empirical_model(const BivariateSample& sample);

}  // namespace zenga

#endif  // ZENGA_ESTIMATOR_HPP
