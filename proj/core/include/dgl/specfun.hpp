#pragma once

#include <limits>
#include <optional>

#include "dgl/random.hpp"

// Special-function kernel: log-gamma, regularized incomplete gamma and beta,
// and gamma variate generation. All routines work in double precision and
// throw dgl::DomainError on arguments outside their domain.
namespace dgl::specfun {

// Convergence control for the iterative evaluations below.
// rel_tol must lie in (0, 1e-3] and max_iter must be at least 50.
struct Accuracy {
  double rel_tol = std::numeric_limits<double>::epsilon();
  int max_iter = 100000;

  void validate() const;
};

// ln Gamma(a) for a > 0.
double log_gamma(double a);

// Both regularized incomplete gamma functions at once. Whichever of the two
// is computed directly keeps full relative accuracy; the other is formed as
// its complement.
struct GammaPair {
  double lower;  // P(a, x) = gamma(a, x) / Gamma(a)
  double upper;  // Q(a, x) = 1 - P(a, x)
};

GammaPair reg_gamma_pair(double a, double x, const Accuracy& acc = {});

double reg_lower_gamma(double a, double x, const Accuracy& acc = {});
double reg_upper_gamma(double a, double x, const Accuracy& acc = {});

// ln Q(a, x), finite even where Q(a, x) itself underflows.
double log_reg_upper_gamma(double a, double x, const Accuracy& acc = {});

// Alternating power series  sum_m (-1)^m x^(m+a) / (m! (m+a))  for gamma(a, x),
// truncated after m_max + 1 terms and divided by Gamma(a). Loses precision
// quickly as x grows; kept as an independent check on reg_lower_gamma.
// Returns std::nullopt once any summand (after division by Gamma(a)) exceeds
// kSeriesTermCap in magnitude: beyond that, cancellation leaves fewer than
// ten correct digits even in extended precision.
inline constexpr double kSeriesTermCap = 1e7;
std::optional<double> reg_lower_gamma_series(double a, double x, int m_max);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x, const Accuracy& acc = {});

struct BetaPair {
  double lower;  // I_x(a, b)
  double upper;  // 1 - I_x(a, b)
};

// I_x(a, b) and its complement, with y = 1 - x supplied separately so that a
// caller holding an accurate small y (e.g. a survival probability) keeps it.
BetaPair reg_inc_beta_pair(double a, double b, double x, double y,
                           const Accuracy& acc = {});

// One Gamma(shape, 1) draw. Marsaglia-Tsang squeeze/rejection for
// shape >= 1; for shape < 1 a draw at shape + 1 is scaled by U^(1/shape).
double sample_gamma(double shape, Rng& rng);

}  // namespace dgl::specfun
