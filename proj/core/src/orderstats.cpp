#include "dgl/orderstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dgl/errors.hpp"
#include "dgl/specfun.hpp"
#include "lattice.hpp"

namespace dgl {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_of(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// ln P(X >= x)
double log_survival(const Dgld& d, std::int64_t x) { return log_of(d.split(x).upper); }

// ln P(X <= x), taking the complement through log1p when the cdf is near one.
double log_cdf(const Dgld& d, std::int64_t x) {
  if (x < 0) return kNegInf;
  const auto s = d.split(x + 1);
  return s.lower <= 0.5 ? log_of(s.lower) : std::log1p(-s.upper);
}

// exp(a) - exp(a + delta) for delta <= 0, keeping relative accuracy.
double exp_difference(double a, double delta) {
  if (a == kNegInf) return 0.0;
  if (delta == kNegInf) return std::exp(a);
  return std::max(0.0, -std::exp(a) * std::expm1(delta));
}

// exp(sum_i f(d_i, x)) - exp(sum_i f(d_i, x + step)). The exponent gap is
// accumulated per component: summing the two log products separately would
// cancel catastrophically when many factors sit close to one.
template <class LogFn>
double product_difference(const HeteroParams& h, std::int64_t x, std::int64_t step, LogFn log_fn) {
  detail::Accumulator at;
  detail::Accumulator gap;
  bool vanishes = false;  // some factor of the second product is zero
  for (const auto& d : h.components()) {
    const double here = log_fn(d, x);
    if (here == kNegInf) return 0.0;
    at.add(here);
    const double there = log_fn(d, x + step);
    if (there == kNegInf) {
      vanishes = true;
    } else {
      gap.add(there - here);
    }
  }
  return exp_difference(at.value(), vanishes ? kNegInf : gap.value());
}

}  // namespace

void OrderSpec::validate() const {
  if (n < 1 || i < 1 || i > n) {
    throw DomainError("order statistic requires 1 <= i <= n (got i = " + std::to_string(i) +
                      ", n = " + std::to_string(n) + ")");
  }
}

HeteroParams::HeteroParams(std::vector<Params> components) {
  if (components.empty()) throw DomainError("HeteroParams requires at least one component");
  components_.reserve(components.size());
  for (const auto& p : components) components_.emplace_back(p);
}

HeteroParams HeteroParams::iid(const Params& p, std::int64_t n) {
  if (n < 1) throw DomainError("HeteroParams::iid requires n >= 1");
  return HeteroParams(std::vector<Params>(static_cast<std::size_t>(n), p));
}

double order_stat_pmf(const Dgld& d, const OrderSpec& spec, std::int64_t x) {
  spec.validate();
  if (x < 0) return 0.0;
  const double a = static_cast<double>(spec.i);
  const double b = static_cast<double>(spec.n - spec.i + 1);
  const auto at_x = d.split(x);      // {F(x - 1), S(x)}
  const auto at_next = d.split(x + 1);  // {F(x), S(x + 1)}
  const auto hi = specfun::reg_inc_beta_pair(a, b, at_next.lower, at_next.upper);
  const auto lo = specfun::reg_inc_beta_pair(a, b, at_x.lower, at_x.upper);
  const double g = at_x.lower <= 0.5 ? hi.lower - lo.lower : lo.upper - hi.upper;
  return std::clamp(g, 0.0, 1.0);
}

double min_pmf(const HeteroParams& h, std::int64_t u) {
  if (u < 0) return 0.0;
  return product_difference(h, u, 1, log_survival);
}

double max_pmf(const HeteroParams& h, std::int64_t w) {
  if (w < 0) return 0.0;
  return product_difference(h, w, -1, log_cdf);
}

SeriesValue range_zero_prob(const Dgld& d, std::int64_t n, double tail_tol) {
  if (n < 1) throw DomainError("range_zero_prob requires n >= 1");
  detail::check_tail_tol(tail_tol, "range_zero_prob");
  if (n == 1) return {1.0, 0.0, 0};

  // Past the mode pmf decreases, so sum_{y > N} pmf(y)^n is at most
  // pmf(N + 1)^(n - 1) P(X > N).
  const std::int64_t peak = d.mode();
  const double power = static_cast<double>(n);
  detail::PmfWalker walk(d, 0);
  detail::Accumulator sum;
  std::int64_t horizon = std::max<std::int64_t>(63, peak);
  for (;;) {
    while (walk.position() <= horizon) sum.add(std::pow(walk.next(), power));
    const double next_mass = d.pmf(walk.position());
    const double bound = std::pow(next_mass, power - 1.0) * walk.survival();
    if (0.5 * bound <= tail_tol) return {sum.value() + 0.5 * bound, 0.5 * bound, horizon + 1};
    if (horizon >= kMaxSeriesTerms) detail::throw_truncation("range_zero_prob", bound, tail_tol);
    horizon = 2 * horizon + 1;
  }
}

}  // namespace dgl
