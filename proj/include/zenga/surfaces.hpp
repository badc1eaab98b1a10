#ifndef ZENGA_SURFACES_HPP
#define ZENGA_SURFACES_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zenga/models.hpp"
#include "zenga/numerics.hpp"

namespace zenga {

enum class MeasureTag { Z, I, I12, I21, L };
enum class Provenance { analytic, quadrature, empirical };

std::string to_string(MeasureTag tag);
std::string to_string(Provenance p);
MeasureTag measure_tag_from_string(const std::string& s);
Provenance provenance_from_string(const std::string& s);

// Row-major matrix keyed by (u1 index, u2 index).  NaN marks a missing cell.
struct GridMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  GridMatrix() = default;
  GridMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, std::numeric_limits<double>::quiet_NaN()) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Quantile-level lattice plus one value matrix per measure component.
struct SurfaceGrid {
  std::vector<double> u1_levels;
  std::vector<double> u2_levels;
  std::vector<MeasureTag> measures;  // one entry, or {I12, I21} for the pair
  std::vector<GridMatrix> values;    // parallel to measures
  Provenance provenance = Provenance::analytic;
  std::string model_label;
  std::optional<std::size_t> sample_size;

  // Dimension coherence plus the [0,1] range invariant (1e-9 slack) for
  // bounded measures; missing cells are exempt.
  void validate() const;
};

struct PartialMeans {
  double lower;
  double upper;
  Provenance provenance = Provenance::quadrature;
};

struct MonotonicityViolation {
  int axis;  // 1 or 2
  std::size_t i, j;
  double drop;  // size of the decrease
};

struct MonotonicityReport {
  bool passed = true;
  std::vector<MonotonicityViolation> violations;
};

// ---------------------------------------------------------------------------
// Numeric first-moment quantile machinery.
//
// For a model that exposes a density with finite support, the first-moment
// distribution has density x1 x2 f / mu.  Its marginal distribution and the
// conditional distributions of X2 given X1 > q are tabulated as cumulative
// panel integrals and inverted by in-panel bisection.  Everything is built
// eagerly so instances are immutable after construction.
class FirstMomentQuantiles {
 public:
  FirstMomentQuantiles(const BivariateQuantileModel& model, const Tolerance& tol);

  double marginal_quantile(double u1) const;

  // Conditional slice at a fixed u1 (shares the tabulation across u2 values).
  class Slice {
   public:
    double quantile(double u2) const;
    double threshold() const { return q1fm_; }

   private:
    friend class FirstMomentQuantiles;
    struct Table;
    double q1fm_;
    std::shared_ptr<const Table> table_;
  };

  Slice conditional_slice(double u1) const;
  double conditional_quantile(double u1, double u2) const;

  // Product moment actually used for normalisation (quadrature value).
  double normalization() const { return mu_; }

 private:
  struct CumTable;
  std::function<double(double, double)> density_;
  SupportRect support_;
  Tolerance tol_;
  double mu_ = 0.0;
  std::shared_ptr<const CumTable> marginal_;
};

// ---------------------------------------------------------------------------
// Moment-based surface Z and index xi.

// Z(u) = 1 - [Q1 Q21] / [Q1^(1) Q21^(1)].  Uses the model's closed-form
// first-moment quantiles when present, otherwise the numeric path above
// (density + finite support required).
double zenga_Z(const BivariateQuantileModel& model, const QuantilePoint& u,
               const Tolerance& tol = {});

// Univariate reduction: Z(u) = 1 - Q(u)/Q^(1)(u).
double zenga_Z_univariate(const std::function<double(double)>& q,
                          const std::function<double(double)>& fm_q, double u);

// Double integral of Z over the clipped unit square.  The clipped sliver
// contributes at most ~4 * kLevelEpsilon when Z is within its bounds.
double zenga_index_xi(const BivariateQuantileModel& model,
                      const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Quantile-based surface I and friends.

// Lower/upper partial product means M-(u), M+(u) of Q1(p1) Q21(p1, p2).
PartialMeans partial_product_means(const BivariateQuantileModel& model,
                                   const QuantilePoint& u,
                                   const Tolerance& tol = {});

// I(u) = 1 - M-(u)/M+(u).
double zenga_I(const BivariateQuantileModel& model, const QuantilePoint& u,
               const Tolerance& tol = {});

// Univariate reduction with an explicit quantile function.
double zenga_I_univariate(const std::function<double(double)>& q, double u,
                          const Tolerance& tol = {});

// General-n version driven by the product quantile
// g(p) = Q1(p1) Q21(p1,p2) ... Q_{n...1}(p1..pn).  Nested quadrature; cost
// grows geometrically with n, and n >= 4 prints a one-line warning on
// stderr unless quiet.
double zenga_I_nd(const std::function<double(std::span<const double>)>& product_quantile,
                  const QuantileVector& u, const Tolerance& tol = {},
                  bool quiet = false);

// x-space measure A(x1, x2) = 1 - mu-/mu+ from the density (finite support
// required; orthant masses obtained by quadrature).
double zenga_A_xspace(const BivariateQuantileModel& model, double x1, double x2,
                      const Tolerance& tol = {});

// Literal evaluation of the discrepant closed form printed for the
// unit-scale Pareto family; retained only as a documented cross-check
// against the quadrature path.
double pareto_unit_A_printed(double c, double x1, double x2);

// Bivariate Lorenz surface L(u) = (1/mu) * integral of the product quantile
// over [0,u1] x [0,u2], with mu the full-square integral.
double lorenz_surface(const BivariateQuantileModel& model, const QuantilePoint& u,
                      const Tolerance& tol = {});

// Bridge from Lorenz values to I:
// I = 1 - (1-u1)(1-u2) L(u1,u2) / (u1 u2 [1 - L(1,u2) - L(u1,1) + L(u1,u2)]).
double zenga_I_from_lorenz(double L_uu, double L_1u, double L_u1,
                           const QuantilePoint& u);

// Double integral of I over the clipped unit square.
double synthetic_index_I(const BivariateQuantileModel& model,
                         const Tolerance& tol = {});

// Lattice check that the product quantile Q1(p1) Q21(p1,p2) is non-decreasing
// in each coordinate: the positive-dependence premise under which the [0,1]
// bounds of the I surface hold.
MonotonicityReport monotonicity_diagnostic(const BivariateQuantileModel& model,
                                           const std::vector<double>& u1_levels,
                                           const std::vector<double>& u2_levels);

// ---------------------------------------------------------------------------
// Grid drivers.

std::vector<double> linspace_levels(double lo, double hi, std::size_t count);

// Evaluate Z, I or L on a lattice.  For the vector measure pair use
// vbzc.hpp's evaluate_vbzc_surface.
SurfaceGrid evaluate_surface(const BivariateQuantileModel& model, MeasureTag measure,
                             const std::vector<double>& u1_levels,
                             const std::vector<double>& u2_levels,
                             const Tolerance& tol = {});

}  // namespace zenga

#endif  // ZENGA_SURFACES_HPP
