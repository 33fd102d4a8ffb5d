#include "dgl/glomax.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dgl/errors.hpp"
#include "dgl/specfun.hpp"

namespace dgl {

void Params::validate() const {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(c) || !ok(alpha) || !ok(theta)) {
    std::ostringstream msg;
    msg << "parameters must satisfy c > 0, alpha > 0, theta > 0 and be finite (got c = " << c
        << ", alpha = " << alpha << ", theta = " << theta << ")";
    throw DomainError(msg.str());
  }
}

double gld_gamma_arg(const Params& p, double y) { return std::log1p(y / p.theta) / p.c; }

double gld_pdf(const Params& p, double y) {
  p.validate();
  if (std::isnan(y) || y < 0.0) throw DomainError("gamma-Lomax density requires y >= 0");
  if (std::isinf(y)) return 0.0;
  const double log_term = std::log1p(y / p.theta);
  if (y == 0.0 || log_term == 0.0) {
    if (p.alpha < 1.0) return std::numeric_limits<double>::infinity();
    if (p.alpha == 1.0) return 1.0 / (p.c * p.theta);
    return 0.0;
  }
  const double log_f = -std::log(y + p.theta) - specfun::log_gamma(p.alpha) -
                       p.alpha * std::log(p.c) - log_term / p.c +
                       (p.alpha - 1.0) * std::log(log_term);
  return std::exp(log_f);
}

double gld_cdf(const Params& p, double y) {
  p.validate();
  if (std::isnan(y)) throw DomainError("gamma-Lomax cdf requires a non-NaN argument");
  if (y <= 0.0) return 0.0;
  return specfun::reg_lower_gamma(p.alpha, gld_gamma_arg(p, y));
}

double gld_survival(const Params& p, double y) {
  p.validate();
  if (std::isnan(y)) throw DomainError("gamma-Lomax survival requires a non-NaN argument");
  if (y <= 0.0) return 1.0;
  return specfun::reg_upper_gamma(p.alpha, gld_gamma_arg(p, y));
}

double gld_quantile(const Params& p, double q) {
  p.validate();
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("quantile requires q in [0, 1)");
  if (q == 0.0) return 0.0;

  // Bracket [lo, hi] starting from theta and doubling.
  double lo = 0.0;
  double hi = p.theta;
  while (gld_cdf(p, hi) < q) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return std::numeric_limits<double>::infinity();
  }

  // Newton steps on the cdf, falling back to bisection whenever a step leaves
  // the bracket. Converges in x rather than in F so that tiny q, where the cdf
  // is itself tiny, is resolved to full relative precision.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 2000; ++iter) {
    const double err = gld_cdf(p, x) - q;
    if (err == 0.0) return x;
    if (err < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    const double density = gld_pdf(p, x);
    double next = (density > 0.0 && std::isfinite(density)) ? x - err / density : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

double gld_sample(const Params& p, Rng& rng) {
  p.validate();
  return p.theta * std::expm1(p.c * specfun::sample_gamma(p.alpha, rng));
}

double gld_mode(const Params& p) {
  p.validate();
  if (p.alpha <= 1.0) return 0.0;
  return p.theta * std::expm1(p.c * (p.alpha - 1.0) / (p.c + 1.0));
}

}  // namespace dgl
