#include "zenga/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

namespace zenga {

double empirical_quantile(const std::vector<double>& values, double u) {
  if (values.empty()) throw ConditioningError("empirical_quantile: empty sample");
  if (!(u > 0.0 && u < 1.0))
    throw ValidationError("empirical_quantile requires u in (0,1)");
  const double nu = static_cast<double>(values.size()) * u;
  std::size_t k = static_cast<std::size_t>(std::ceil(nu));
  if (k < 1) k = 1;
  if (k > values.size()) k = values.size();
  return values[k - 1];
}

TailSubsample tail_subsample(const BivariateSample& sample, Direction direction,
                             double u) {
  if (!(u > 0.0 && u < 1.0))
    throw ValidationError("tail_subsample requires u in (0,1)");
  const bool d12 = (direction == Direction::d12);
  const std::vector<double>& cond = d12 ? sample.x2 : sample.x1;
  const std::vector<double>& kept = d12 ? sample.x1 : sample.x2;

  std::vector<double> sorted_cond(cond);
  std::sort(sorted_cond.begin(), sorted_cond.end());
  const double threshold = empirical_quantile(sorted_cond, u);

  TailSubsample out;
  out.direction = direction;
  out.threshold_level = u;
  for (std::size_t i = 0; i < cond.size(); ++i)
    if (cond[i] > threshold) out.values.push_back(kept[i]);
  if (out.values.empty()) {
    std::ostringstream msg;
    msg << "tail_subsample: no observation exceeds the empirical "
        << u << "-quantile (n=" << sample.size() << ")";
    throw ConditioningError(msg.str());
  }
  std::stable_sort(out.values.begin(), out.values.end());
  return out;
}

double estimate_lower_partial_mean(const TailSubsample& sub, double u1) {
  if (sub.values.empty())
    throw ConditioningError("estimate_lower_partial_mean: empty subsample");
  if (!(u1 > 0.0 && u1 < 1.0))
    throw ValidationError("estimate_lower_partial_mean requires u1 in (0,1)");
  const double n_u = static_cast<double>(sub.size());
  const double k_real = std::floor(n_u * u1);
  const std::size_t k = static_cast<std::size_t>(k_real);
  double sum = 0.0;
  for (std::size_t i = 0; i < k && i < sub.values.size(); ++i)
    sum += sub.values[i];
  double acc = sum / n_u;
  const double coeff = u1 - k_real / n_u;
  if (std::abs(coeff) > 1e-12) {
    // k = n_u only when the coefficient vanishes, so this never runs off
    // the end.
    acc += coeff * sub.values[k];
  }
  return acc / u1;
}

namespace {

double subsample_mean(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double component_estimate(const TailSubsample& sub, double own_level) {
  const double m_lower = estimate_lower_partial_mean(sub, own_level);
  const double mu_hat = subsample_mean(sub.values);
  const double m_upper = (mu_hat - own_level * m_lower) / (1.0 - own_level);
  if (!(m_upper > 0.0))
    throw DegenerateDenominatorError(
        "estimate_vbzc: empirical upper partial mean is not positive");
  double v = 1.0 - m_lower / m_upper;
  // the sandwich argument puts the estimate in [0,1]; snap rounding residue
  if (v < 0.0 && v >= -1e-12) v = 0.0;
  if (v > 1.0 && v <= 1.0 + 1e-12) v = 1.0;
  return v;
}

}  // namespace

VbzcPoint estimate_vbzc(const BivariateSample& sample, const QuantilePoint& u) {
  const TailSubsample s12 = tail_subsample(sample, Direction::d12, u.u2);
  const TailSubsample s21 = tail_subsample(sample, Direction::d21, u.u1);
  return VbzcPoint{component_estimate(s12, u.u1), component_estimate(s21, u.u2), u};
}

SurfaceGrid estimate_surface(const BivariateSample& sample,
                             const std::vector<double>& u1_levels,
                             const std::vector<double>& u2_levels) {
  if (u1_levels.empty() || u2_levels.empty())
    throw ValidationError("estimate_surface: empty level lists");
  for (double u : u1_levels)
    if (!(u > 0.0 && u < 1.0))
      throw ValidationError("estimate_surface: levels must lie strictly inside (0,1)");
  for (double u : u2_levels)
    if (!(u > 0.0 && u < 1.0))
      throw ValidationError("estimate_surface: levels must lie strictly inside (0,1)");

  SurfaceGrid grid;
  grid.u1_levels = u1_levels;
  grid.u2_levels = u2_levels;
  grid.measures = {MeasureTag::I12, MeasureTag::I21};
  grid.values.emplace_back(u1_levels.size(), u2_levels.size());
  grid.values.emplace_back(u1_levels.size(), u2_levels.size());
  grid.provenance = Provenance::empirical;
  grid.sample_size = sample.size();
  grid.model_label = "sample(n=" + std::to_string(sample.size()) + ")";

  // One subsample per distinct conditioning level and direction.
  std::vector<std::unique_ptr<TailSubsample>> subs12(u2_levels.size());
  for (std::size_t j = 0; j < u2_levels.size(); ++j) {
    try {
      subs12[j] = std::make_unique<TailSubsample>(
          tail_subsample(sample, Direction::d12, u2_levels[j]));
    } catch (const ConditioningError&) {
    }
  }
  std::vector<std::unique_ptr<TailSubsample>> subs21(u1_levels.size());
  for (std::size_t i = 0; i < u1_levels.size(); ++i) {
    try {
      subs21[i] = std::make_unique<TailSubsample>(
          tail_subsample(sample, Direction::d21, u1_levels[i]));
    } catch (const ConditioningError&) {
    }
  }

  for (std::size_t i = 0; i < u1_levels.size(); ++i)
    for (std::size_t j = 0; j < u2_levels.size(); ++j) {
      if (subs12[j]) {
        try {
          grid.values[0].at(i, j) = component_estimate(*subs12[j], u1_levels[i]);
        } catch (const Error&) {
        }
      }
      if (subs21[i]) {
        try {
          grid.values[1].at(i, j) = component_estimate(*subs21[i], u2_levels[j]);
        } catch (const Error&) {
        }
      }
    }
  grid.validate();
  return grid;
}

SurfaceGrid extract_slice(const SurfaceGrid& grid, bool fix_u1, double at) {
  const std::vector<double>& fixed_levels = fix_u1 ? grid.u1_levels : grid.u2_levels;
  auto it = std::find_if(fixed_levels.begin(), fixed_levels.end(),
                         [at](double v) { return std::abs(v - at) <= 1e-12; });
  if (it == fixed_levels.end())
    throw ValidationError("extract_slice: level not present in the grid");
  const std::size_t idx = static_cast<std::size_t>(it - fixed_levels.begin());

  SurfaceGrid out;
  out.measures = grid.measures;
  out.provenance = grid.provenance;
  out.sample_size = grid.sample_size;
  out.model_label = grid.model_label;
  if (fix_u1) {
    out.u1_levels = {at};
    out.u2_levels = grid.u2_levels;
    for (const GridMatrix& v : grid.values) {
      GridMatrix row(1, grid.u2_levels.size());
      for (std::size_t j = 0; j < grid.u2_levels.size(); ++j)
        row.at(0, j) = v.at(idx, j);
      out.values.push_back(std::move(row));
    }
  } else {
    out.u1_levels = grid.u1_levels;
    out.u2_levels = {at};
    for (const GridMatrix& v : grid.values) {
      GridMatrix col(grid.u1_levels.size(), 1);
      for (std::size_t i = 0; i < grid.u1_levels.size(); ++i)
        col.at(i, 0) = v.at(i, idx);
      out.values.push_back(std::move(col));
    }
  }
  return out;
}

BivariateQuantileModel empirical_model(const BivariateSample& sample) {
  auto shared = std::make_shared<const BivariateSample>(sample);
  auto sorted1 = std::make_shared<std::vector<double>>(sample.x1);
  auto sorted2 = std::make_shared<std::vector<double>>(sample.x2);
  std::sort(sorted1->begin(), sorted1->end());
  std::sort(sorted2->begin(), sorted2->end());

  BivariateQuantileModel m;
  m.name = "empirical(n=" + std::to_string(sample.size()) + ")";
  m.q1 = [sorted1](double u) { return empirical_quantile(*sorted1, u); };
  m.q2 = [sorted2](double u) { return empirical_quantile(*sorted2, u); };
  m.q21 = [shared](double u1, double u2) {
    const TailSubsample s = tail_subsample(*shared, Direction::d21, u1);
    return empirical_quantile(s.values, u2);
  };
  m.q12 = [shared](double u1, double u2) {
    const TailSubsample s = tail_subsample(*shared, Direction::d12, u2);
    return empirical_quantile(s.values, u1);
  };
  // Exact step-function integrals; quadrature never sees the steps.
  m.j12 = [shared](double u1, double u2) {
    const TailSubsample s = tail_subsample(*shared, Direction::d12, u2);
    return u1 * estimate_lower_partial_mean(s, u1);
  };
  m.j21 = [shared](double u1, double u2) {
    const TailSubsample s = tail_subsample(*shared, Direction::d21, u1);
    return u2 * estimate_lower_partial_mean(s, u2);
  };
  m.mu12 = [shared](double u2) {
    const TailSubsample s = tail_subsample(*shared, Direction::d12, u2);
    return subsample_mean(s.values);
  };
  m.mu21 = [shared](double u1) {
    const TailSubsample s = tail_subsample(*shared, Direction::d21, u1);
    return subsample_mean(s.values);
  };
  return m;
}

}  // namespace zenga
