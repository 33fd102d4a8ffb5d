#pragma once

#include "dgl/random.hpp"

// The continuous gamma-Lomax law. If G ~ Gamma(alpha, 1) then
// Y = theta * (exp(c G) - 1) is gamma-Lomax with parameters (c, alpha, theta),
// with cdf F(y) = P(alpha, log1p(y / theta) / c).
namespace dgl {

struct Params {
  double c = 1.0;      // tail shape; survival decays like y^(-1/c)
  double alpha = 1.0;  // gamma shape
  double theta = 1.0;  // scale

  // Throws DomainError unless all three are finite and strictly positive.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// Gamma-scale argument c^-1 log(1 + y / theta) at which the cdf evaluates
// the regularized lower incomplete gamma.
double gld_gamma_arg(const Params& p, double y);

// Density. At y = 0 returns +infinity for alpha < 1 and 1 / (c theta) for
// alpha == 1. Throws DomainError for y < 0.
double gld_pdf(const Params& p, double y);

double gld_cdf(const Params& p, double y);
double gld_survival(const Params& p, double y);

// Inverse cdf for q in [0, 1). Returns +infinity if the quantile exceeds the
// double range.
double gld_quantile(const Params& p, double q);

double gld_sample(const Params& p, Rng& rng);

// 0 for alpha <= 1, otherwise theta (exp(c (alpha - 1) / (c + 1)) - 1).
double gld_mode(const Params& p);

}  // namespace dgl
