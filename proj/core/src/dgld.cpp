#include "dgl/dgld.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dgl/errors.hpp"
#include "lattice.hpp"

namespace dgl {
namespace {

constexpr std::int64_t kFirstHorizon = 63;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// E[Y^j ; G >= u] for j = 0..r where Y = theta (e^{cG} - 1), G ~ Gamma(alpha).
// Expanding (e^{cG} - 1)^j leaves terms E[e^{icG}; G >= u], each of which is a
// scaled upper incomplete gamma. Requires r c < 1. `magnitude`, when given,
// receives the sum of absolute values behind each entry, which bounds its
// rounding error in units of epsilon.
std::vector<double> truncated_power_moments(const Params& p, double u, int r,
                                            std::vector<double>* magnitude = nullptr) {
  std::vector<double> exp_moment(r + 1);
  for (int i = 0; i <= r; ++i) {
    const double rate = 1.0 - i * p.c;
    exp_moment[i] = std::pow(rate, -p.alpha) * specfun::reg_upper_gamma(p.alpha, rate * u);
  }
  std::vector<double> out(r + 1);
  if (magnitude) magnitude->assign(r + 1, 0.0);
  for (int j = 0; j <= r; ++j) {
    double s = 0.0;
    double mag = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double term = binomial(j, i) * (((j - i) % 2 == 0) ? 1.0 : -1.0) * exp_moment[i];
      s += term;
      mag += std::fabs(term);
    }
    out[j] = std::pow(p.theta, j) * s;
    if (magnitude) (*magnitude)[j] = std::pow(p.theta, j) * mag;
  }
  return out;
}

// Polynomial in ascending powers: q[j] is the coefficient of y^j.
using Poly = std::vector<double>;

double poly_eval(const Poly& q, double y) {
  double v = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) v = v * y + *it;
  return v;
}

// Coefficients of q(y + s).
Poly poly_shift(const Poly& q, double s) {
  Poly out(q.size(), 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      out[i] += q[j] * binomial(static_cast<int>(j), static_cast<int>(i)) *
                std::pow(s, static_cast<double>(j - i));
    }
  }
  return out;
}

// q(y + a) - q(y + b), with the leading cancellation done exactly.
Poly poly_step(const Poly& q, double a, double b) {
  Poly hi = poly_shift(q, a);
  const Poly lo = poly_shift(q, b);
  for (std::size_t j = 0; j < hi.size(); ++j) hi[j] -= lo[j];
  return hi;
}

struct Expectation {
  double value;
  double error;  // bound on accumulated rounding
};

// E[q(Y) ; Y >= y] from the truncated power moments at y.
Expectation truncated_expectation(const Dgld& d, const Poly& q, double y) {
  std::vector<double> mag;
  const auto m =
      truncated_power_moments(d.params(), d.lattice_arg(y), static_cast<int>(q.size()) - 1, &mag);
  double v = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    v += q[j] * m[j];
    scale += std::fabs(q[j]) * mag[j];
  }
  // Each incomplete gamma carries a few ulps; the sums add a few more.
  return {v, 64.0 * std::numeric_limits<double>::epsilon() * scale};
}

// Bracket for T = sum_{x >= M} h(x) pmf(x), M = n + 1, where h is a degree-r
// polynomial weight with (y - shift)^r <= h(floor y) <= y^r on the tail.
//
// Where the continuous density f is non-increasing on [M, inf) and h is
// increasing and convex on [M - 3, inf), a tighter bracket holds. Write
// T = E[h(Y); Y >= M] - D, with D the sum over cells [x, x+1) of
// int (h(y) - h(x)) f(y) dy. On each cell h(y) - h(x) is increasing and f
// decreasing, so Chebyshev's integral inequality and convexity give
// D <= 1/2 E[h(Y+1) - h(Y); Y >= M]. The tangent at x together with
// f(x+1) >= pmf(x+1) gives D >= 1/2 E[h(Y-2) - h(Y-3); Y >= M+1].
std::array<double, 2> weighted_tail_bracket(const Dgld& d, std::int64_t n, const Poly& h,
                                            double shift, double convex_from) {
  const int r = static_cast<int>(h.size()) - 1;
  const double m_lo = static_cast<double>(n + 1);
  std::vector<double> mag;
  const auto m = truncated_power_moments(d.params(), d.lattice_arg(m_lo), r, &mag);
  double lower = 0.0;
  double lower_scale = 0.0;
  for (int j = 0; j <= r; ++j) {
    const double coef = binomial(r, j) * std::pow(-shift, r - j);
    lower += coef * m[j];
    lower_scale += std::fabs(coef) * mag[j];
  }
  const double eps = std::numeric_limits<double>::epsilon();
  double upper = std::max(m[r] + 64.0 * eps * mag[r], 0.0);
  lower = std::clamp(lower - 64.0 * eps * lower_scale, 0.0, upper);

  if (m_lo >= gld_mode(d.params()) && m_lo - 3.0 >= convex_from) {
    const auto whole = truncated_expectation(d, h, m_lo);
    const auto d_hi = truncated_expectation(d, poly_step(h, 1.0, 0.0), m_lo);
    const auto d_lo = truncated_expectation(d, poly_step(h, -2.0, -3.0), m_lo + 1.0);
    const double guard = whole.error + 0.5 * (d_hi.error + d_lo.error);
    upper = std::min(upper, whole.value - 0.5 * d_lo.value + guard);
    lower = std::max(lower, whole.value - 0.5 * d_hi.value - guard);
    lower = std::min(lower, upper);
  }
  return {lower, upper};
}

void require_moment(const Dgld& d, int r, const char* who) {
  if (r < 1) throw DomainError(std::string(who) + ": order r must be >= 1");
  if (!d.moment_exists(r)) {
    throw ExistenceError(std::string(who) + " of order r = " + std::to_string(r) +
                         " does not exist: requires c < 1/r (c = " +
                         detail::num(d.params().c) + ", 1/r = " + detail::num(1.0 / r) +
                         ")");
  }
}

// sum_x h(x) pmf(x) for a polynomial weight h of degree r, bracketed by
// (x - shift)^r <= h(x) <= x^r on the tail and convex increasing from
// convex_from on.
SeriesValue weighted_sum(const Dgld& d, const Poly& h, double shift, double convex_from,
                         double tol, const char* who) {
  detail::PmfWalker walk(d, 0);
  detail::Accumulator sum;
  std::int64_t horizon = std::max<std::int64_t>(kFirstHorizon, static_cast<std::int64_t>(shift));
  for (;;) {
    while (walk.position() <= horizon) {
      const double x = static_cast<double>(walk.position());
      const double g = walk.next();
      sum.add(std::max(poly_eval(h, x), 0.0) * g);
    }
    const auto [lo, hi] = weighted_tail_bracket(d, horizon, h, shift, convex_from);
    const double half = 0.5 * (hi - lo);
    if (half <= tol) return {sum.value() + 0.5 * (lo + hi), half, horizon + 1};
    if (horizon >= kMaxSeriesTerms) detail::throw_truncation(who, half, tol);
    horizon = 2 * horizon + 1;
  }
}

double entropy_term(double s) { return s > 0.0 ? -s * std::log(s) : 0.0; }

}  // namespace

void MomentSpec::validate() const {
  if (order < 1) throw DomainError("moment order r must be >= 1");
  detail::check_tail_tol(tail_tol, "moment");
}

Dgld::Dgld(Params params) : params_(params), log_gamma_alpha_(0.0) {
  params_.validate();
  log_gamma_alpha_ = specfun::log_gamma(params_.alpha);
}

double Dgld::lattice_arg(double x) const { return std::log1p(x / params_.theta) / params_.c; }

specfun::GammaPair Dgld::split(std::int64_t x) const {
  if (x <= 0) return {0.0, 1.0};
  return specfun::reg_gamma_pair(params_.alpha, lattice_arg(static_cast<double>(x)));
}

double Dgld::pmf(std::int64_t x) const {
  if (x < 0) return 0.0;
  return detail::pmf_from_split(split(x), split(x + 1));
}

double Dgld::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf requires a non-NaN argument");
  if (x < 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return specfun::reg_lower_gamma(params_.alpha, lattice_arg(std::floor(x) + 1.0));
}

double Dgld::survival(std::int64_t x) const { return split(x).upper; }

double Dgld::hazard(std::int64_t x) const {
  if (x < 0) throw DomainError("hazard requires x >= 0");
  const auto at_x = split(x);
  if (at_x.upper <= 0.0) {
    throw SaturationError("hazard at x = " + std::to_string(x) +
                          " is undefined: P(X >= x) underflows to zero");
  }
  return detail::pmf_from_split(at_x, split(x + 1)) / at_x.upper;
}

std::int64_t Dgld::mode() const {
  const double x0 = gld_mode(params_);
  if (!(x0 < 9.0e18)) throw DomainError("mode exceeds the 64-bit integer range");
  const auto k = static_cast<std::int64_t>(std::floor(x0));
  const std::int64_t first = std::max<std::int64_t>(k - 1, 0);
  const std::int64_t last = std::max<std::int64_t>(k + 1, 1);
  std::int64_t best = first;
  double best_mass = pmf(first);
  for (std::int64_t x = first + 1; x <= last; ++x) {
    const double g = pmf(x);
    if (g > best_mass) {
      best = x;
      best_mass = g;
    }
  }
  return best;
}

std::int64_t Dgld::quantile(double q) const {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("quantile requires q in [0, 1)");
  const auto cdf_at = [this](std::int64_t x) { return cdf(static_cast<double>(x)); };
  if (cdf_at(0) >= q) return 0;
  std::int64_t lo = 0;  // cdf(lo) < q
  std::int64_t hi = 1;  // searched until cdf(hi) >= q
  while (cdf_at(hi) < q) {
    lo = hi;
    if (hi > (std::int64_t{1} << 61)) throw DomainError("quantile exceeds the 64-bit integer range");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (cdf_at(mid) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::int64_t Dgld::sample(Rng& rng) const {
  const double y = gld_sample(params_, rng);
  if (!(y < 9.2e18)) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::floor(y));
}

bool Dgld::moment_exists(int r) const {
  if (r < 1) throw DomainError("moment order r must be >= 1");
  return params_.c < 1.0 / r;
}

SeriesValue Dgld::moment(const MomentSpec& spec) const {
  spec.validate();
  require_moment(*this, spec.order, "moment");
  Poly power(spec.order + 1, 0.0);
  power.back() = 1.0;
  return weighted_sum(*this, power, 1.0, 0.0, spec.tail_tol, "moment");
}

SeriesValue Dgld::factorial_moment(int r, double tail_tol) const {
  detail::check_tail_tol(tail_tol, "factorial_moment");
  require_moment(*this, r, "factorial moment");
  // x (x - 1) ... (x - r + 1); its roots end at r - 1, beyond which every
  // derivative is positive.
  Poly falling{1.0};
  for (int j = 0; j < r; ++j) {
    Poly next(falling.size() + 1, 0.0);
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i];
      next[i] -= j * falling[i];
    }
    falling = std::move(next);
  }
  return weighted_sum(*this, falling, static_cast<double>(r), r - 1.0, tail_tol,
                      "factorial_moment");
}

SeriesValue Dgld::pgf(double s, double tail_tol) const {
  detail::check_tail_tol(tail_tol, "pgf");
  if (!(std::fabs(s) <= 1.0)) {
    throw DomainError("pgf requires |s| <= 1: the tail is polynomial, so the radius of "
                      "convergence is 1");
  }
  if (s == 1.0) return {1.0, 0.0, 0};
  if (s == 0.0) return {pmf(0), 0.0, 1};

  const std::int64_t peak = mode();
  detail::PmfWalker walk(*this, 0);
  detail::Accumulator sum;
  double power = 1.0;  // s^x at the walker position
  std::int64_t horizon = kFirstHorizon;
  for (;;) {
    while (walk.position() <= horizon) {
      sum.add(power * walk.next());
      power *= s;
    }
    // |s|^{N+1} P(X > N) bounds the tail; for s < 0 past the mode the terms
    // alternate with decreasing magnitude, so the first omitted term does.
    const double magnitude = std::fabs(power);
    if (s > 0.0) {
      const double bound = magnitude * walk.survival();
      if (0.5 * bound <= tail_tol) return {sum.value() + 0.5 * bound, 0.5 * bound, horizon + 1};
    } else {
      double bound = magnitude * walk.survival();
      if (walk.position() > peak) bound = std::min(bound, magnitude * pmf(walk.position()));
      if (bound <= tail_tol) return {sum.value(), bound, horizon + 1};
    }
    if (horizon >= kMaxSeriesTerms) detail::throw_truncation("pgf", magnitude, tail_tol);
    horizon = 2 * horizon + 1;
  }
}

SeriesValue Dgld::mgf(double t, double tail_tol) const {
  detail::check_tail_tol(tail_tol, "mgf");
  if (std::isnan(t)) throw DomainError("mgf requires a non-NaN argument");
  if (t > 0.0) {
    throw DivergenceError("mgf diverges for every t > 0: P(X >= x) decays only like x^(-1/c)");
  }
  return pgf(std::exp(t), tail_tol);
}

SeriesValue Dgld::cre_entropy(double tail_tol) const {
  detail::check_tail_tol(tail_tol, "cre_entropy");
  if (!(params_.c < 1.0)) {
    throw DivergenceError("cumulative residual entropy is infinite unless c < 1 (c = " +
                          detail::num(params_.c) + ")");
  }
  namespace quad = boost::math::quadrature;

  // The summand -S ln S with S = P(X > x) = P(Y >= x + 1) extends to the
  // continuous f(y) = -F(y) ln F(y), F(y) = P(Y >= y + 1), which decreases
  // once F <= 1/e. Then  int_{N+1}^inf f <= sum_{x>N} f(x) <= int_N^inf f.
  // Substituting t = u(y + 1) turns dy into theta c e^{ct} dt.
  const double scale = params_.theta * params_.c;
  const double alpha = params_.alpha;
  const double c = params_.c;
  const auto integrand = [scale, alpha, c](double t) {
    if (!std::isfinite(t)) return 0.0;
    const double log_q = specfun::log_reg_upper_gamma(alpha, t);
    if (log_q >= 0.0 || !std::isfinite(log_q)) return 0.0;
    const double v = scale * std::exp(log_q + c * t) * (-log_q);
    return std::isfinite(v) ? v : 0.0;
  };

  std::int64_t x = 0;
  detail::Accumulator sum;
  std::int64_t horizon = kFirstHorizon;
  for (;;) {
    for (; x <= horizon; ++x) sum.add(entropy_term(survival(x + 1)));
    if (survival(horizon + 1) <= std::exp(-1.0)) {
      const double t_near = lattice_arg(static_cast<double>(horizon + 1));
      const double t_far = lattice_arg(static_cast<double>(horizon + 2));
      double step_err = 0.0;
      const double step =
          quad::gauss_kronrod<double, 31>::integrate(integrand, t_near, t_far, 5, 1e-10, &step_err);
      double rest_err = 0.0;
      double rest = 0.0;
      if (integrand(t_far) > 0.0) {
        quad::exp_sinh<double> tail_rule;
        rest = tail_rule.integrate(
            [&](double t) { return integrand(t); }, t_far,
            std::numeric_limits<double>::infinity(), 1e-12, &rest_err);
      }
      const double half = 0.5 * step + std::fabs(step_err) + std::fabs(rest_err);
      if (half <= tail_tol) return {sum.value() + rest + 0.5 * step, half, horizon + 1};
    }
    if (horizon >= kMaxSeriesTerms) detail::throw_truncation("cre_entropy", 0.0, tail_tol);
    horizon = 2 * horizon + 1;
  }
}

}  // namespace dgl
