#ifndef ZENGA_SIMULATION_HPP
#define ZENGA_SIMULATION_HPP

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "zenga/models.hpp"
#include "zenga/numerics.hpp"

namespace zenga {

struct McConfig {
  LognormalParams dgp;
  std::vector<QuantilePoint> points = {QuantilePoint(0.3, 0.3),
                                       QuantilePoint(0.5, 0.5),
                                       QuantilePoint(0.7, 0.7)};
  std::vector<std::size_t> sizes = {50, 100, 200, 500};
  std::size_t replications = 500;
  std::uint64_t master_seed = 20250801;
  std::size_t oracle_n = 1000000;
  std::uint64_t oracle_seed = 9001;

  void validate() const;
};

// One row per (point, n): mean estimates, absolute bias and MSE against the
// plug-in reference truth, over the replications that produced an estimate.
struct McSummary {
  double u1, u2;
  std::size_t n;
  double est12, est21;
  double bias12, bias21;
  double mse12, mse21;
  std::size_t n_failed;
  bool usable;  // false when every replication failed
};

// Stable 64-bit seed for one replication; order-independent so scheduling
// cannot change results.
std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t point_index,
                               std::size_t n, std::size_t replication_index);

// Plug-in truth: the estimator applied to one very large sample.
std::pair<double, double> reference_truth(const LognormalParams& dgp,
                                          const QuantilePoint& u,
                                          std::size_t oracle_n,
                                          std::uint64_t oracle_seed);

std::vector<McSummary> run_replications(const McConfig& config);

// CSV with columns u1,u2,n,est12,est21,bias12,bias21,mse12,mse21,failed.
void write_mc_csv(const std::vector<McSummary>& rows, std::ostream& out);

}  // namespace zenga

#endif  // ZENGA_SIMULATION_HPP
