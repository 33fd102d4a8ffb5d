#pragma once

#include <cstdint>

#include "dgl/glomax.hpp"
#include "dgl/random.hpp"
#include "dgl/specfun.hpp"

namespace dgl {

inline constexpr double kDefaultTailTol = 1e-10;

// Hard cap on the number of lattice points any adaptive series may visit.
inline constexpr std::int64_t kMaxSeriesTerms = std::int64_t{1} << 26;

// Result of an adaptively truncated infinite sum. `value` includes an
// estimate of the omitted tail; the true sum lies within `tail_bound` of it.
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;  // lattice points summed explicitly
};

struct MomentSpec {
  int order = 1;
  double tail_tol = kDefaultTailTol;

  // Throws DomainError unless order >= 1 and tail_tol lies in (0, 1e-4].
  void validate() const;
};

// Discrete gamma-Lomax distribution: the law of floor(Y) for Y gamma-Lomax.
// Support is {0, 1, 2, ...}; P(X >= x) = Q(alpha, log1p(x / theta) / c).
//
// Immutable once constructed; every member is const and may be called
// concurrently. Sampling needs one Rng per thread.
class Dgld {
 public:
  explicit Dgld(Params params);

  const Params& params() const noexcept { return params_; }
  double log_gamma_alpha() const noexcept { return log_gamma_alpha_; }

  // Gamma-scale argument u_x = log1p(x / theta) / c of the lattice point x.
  double lattice_arg(double x) const;

  // {P(X < x), P(X >= x)}, each side accurate in the relative sense.
  specfun::GammaPair split(std::int64_t x) const;

  // P(X = x). Difference of regularized incomplete gammas, taken on
  // whichever side (lower or upper) avoids cancellation. Values below
  // 1e-300 are flushed to zero; x < 0 gives 0.
  double pmf(std::int64_t x) const;

  // P(X <= x) for real x: a right-continuous step function.
  double cdf(double x) const;

  // P(X >= x); 1 for x <= 0.
  double survival(std::int64_t x) const;

  // P(X = x) / P(X >= x). Throws SaturationError when the survival
  // probability underflows to zero.
  double hazard(std::int64_t x) const;

  // Most probable value; ties go to the smaller integer.
  std::int64_t mode() const;

  // Smallest x with cdf(x) >= q, for q in [0, 1).
  std::int64_t quantile(double q) const;

  // floor of an exact gamma-Lomax draw; saturates at INT64_MAX.
  std::int64_t sample(Rng& rng) const;

  // The r-th moment is finite iff c < 1/r.
  bool moment_exists(int r) const;

  // E[X^r]. Throws ExistenceError if c >= 1/r and TruncationError if the
  // tail tolerance cannot be met within kMaxSeriesTerms.
  SeriesValue moment(const MomentSpec& spec) const;

  // E[X (X-1) ... (X-r+1)]; same error behaviour as moment().
  SeriesValue factorial_moment(int r, double tail_tol = kDefaultTailTol) const;

  // E[s^X] for |s| <= 1.
  SeriesValue pgf(double s, double tail_tol = kDefaultTailTol) const;

  // E[exp(t X)] for t <= 0 (t = -infinity allowed). Throws DivergenceError
  // for t > 0: the polynomial tail makes the sum infinite.
  SeriesValue mgf(double t, double tail_tol = kDefaultTailTol) const;

  // Cumulative residual entropy  -sum_x P(X > x) ln P(X > x). Finite iff
  // c < 1; throws DivergenceError otherwise.
  SeriesValue cre_entropy(double tail_tol = kDefaultTailTol) const;

 private:
  Params params_;
  double log_gamma_alpha_;
};

}  // namespace dgl
