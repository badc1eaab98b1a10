#include "zenga/simulation.hpp"

#include <cmath>
#include <limits>

#include "zenga/estimator.hpp"
#include "zenga/io.hpp"
#include "zenga/rng.hpp"

namespace zenga {

void McConfig::validate() const {
  dgp.validate();
  if (points.empty()) throw ValidationError("McConfig: no evaluation points");
  if (sizes.empty()) throw ValidationError("McConfig: no sample sizes");
  for (std::size_t n : sizes)
    if (n < 2) throw ValidationError("McConfig: sample sizes must be >= 2");
  if (replications < 1) throw ValidationError("McConfig: replications must be >= 1");
  if (oracle_n < 100000)
    throw ValidationError("McConfig: oracle_n must be >= 1e5 for a usable truth");
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t point_index,
                               std::size_t n, std::size_t replication_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(point_index) + 1)));
  h = mix64(h ^ (0xC2B2AE3D27D4EB4FULL * (static_cast<std::uint64_t>(n) + 1)));
  h = mix64(h ^ (0x165667B19E3779F9ULL * (static_cast<std::uint64_t>(replication_index) + 1)));
  return h;
}

std::pair<double, double> reference_truth(const LognormalParams& dgp,
                                          const QuantilePoint& u,
                                          std::size_t oracle_n,
                                          std::uint64_t oracle_seed) {
  const BivariateSample big = lognormal_sample(dgp, oracle_n, oracle_seed);
  const VbzcPoint p = estimate_vbzc(big, u);
  return {p.i12, p.i21};
}

std::vector<McSummary> run_replications(const McConfig& config) {
  config.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // One oracle sample serves every point.
  const BivariateSample oracle =
      lognormal_sample(config.dgp, config.oracle_n, config.oracle_seed);

  std::vector<McSummary> out;
  out.reserve(config.points.size() * config.sizes.size());
  for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
    const QuantilePoint& point = config.points[pi];
    const VbzcPoint t = estimate_vbzc(oracle, point);
    for (std::size_t n : config.sizes) {
      double sum12 = 0.0, sum21 = 0.0;
      double sq12 = 0.0, sq21 = 0.0;
      std::size_t ok = 0, failed = 0;
      for (std::size_t rep = 0; rep < config.replications; ++rep) {
        const std::uint64_t seed =
            replication_seed(config.master_seed, pi, n, rep);
        const BivariateSample sample = lognormal_sample(config.dgp, n, seed);
        try {
          const VbzcPoint est = estimate_vbzc(sample, point);
          sum12 += est.i12;
          sum21 += est.i21;
          sq12 += (est.i12 - t.i12) * (est.i12 - t.i12);
          sq21 += (est.i21 - t.i21) * (est.i21 - t.i21);
          ++ok;
        } catch (const ConditioningError&) {
          ++failed;
        } catch (const DegenerateDenominatorError&) {
          ++failed;
        }
      }
      McSummary row{};
      row.u1 = point.u1;
      row.u2 = point.u2;
      row.n = n;
      row.n_failed = failed;
      row.usable = ok > 0;
      if (ok > 0) {
        const double k = static_cast<double>(ok);
        row.est12 = sum12 / k;
        row.est21 = sum21 / k;
        row.bias12 = std::abs(row.est12 - t.i12);
        row.bias21 = std::abs(row.est21 - t.i21);
        row.mse12 = sq12 / k;
        row.mse21 = sq21 / k;
      } else {
        row.est12 = row.est21 = nan;
        row.bias12 = row.bias21 = nan;
        row.mse12 = row.mse21 = nan;
      }
      out.push_back(row);
    }
  }
  return out;
}

void write_mc_csv(const std::vector<McSummary>& rows, std::ostream& out) {
  out << "u1,u2,n,est12,est21,bias12,bias21,mse12,mse21,failed\n";
  for (const McSummary& r : rows) {
    out << format_double(r.u1) << ',' << format_double(r.u2) << ',' << r.n << ','
        << format_double(r.est12) << ',' << format_double(r.est21) << ','
        << format_double(r.bias12) << ',' << format_double(r.bias21) << ','
        << format_double(r.mse12) << ',' << format_double(r.mse21) << ','
        << r.n_failed << '\n';
  }
}

}  // namespace zenga
