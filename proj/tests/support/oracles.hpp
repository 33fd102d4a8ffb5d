#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's evaluation paths except where a test explicitly
// compares the two.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace dgl::oracle {

// erf by its Maclaurin series in long double; fine for |x| <= 3.
inline double erf_taylor(double xd) {
  const long double x = xd;
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-25L) break;
  }
  return static_cast<double>(2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

// Closed forms of P(2, u) and of the alpha = 1 model with c = theta = 1.
inline double lower_gamma_shape2(double u) { return 1.0 - std::exp(-u) * (1.0 + u); }
inline double unit_lomax_pmf(std::int64_t x) { return 1.0 / ((x + 1.0) * (x + 2.0)); }
inline double unit_lomax_cdf(std::int64_t x) { return 1.0 - 1.0 / (x + 2.0); }

inline double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// P(X_{i:n} <= x) = sum_{k=i}^{n} C(n,k) F^k (1-F)^{n-k}.
inline double order_stat_cdf_binomial(int n, int i, double f) {
  double s = 0.0;
  for (int k = i; k <= n; ++k) s += binomial(n, k) * std::pow(f, k) * std::pow(1.0 - f, n - k);
  return s;
}

// Long-double partial sum of a term function over [first, last].
inline double partial_sum(std::int64_t first, std::int64_t last,
                          const std::function<long double(std::int64_t)>& term) {
  long double s = 0.0L;
  for (std::int64_t k = last; k >= first; --k) s += term(k);  // small terms first
  return static_cast<double>(s);
}

// Two-sided Kolmogorov-Smirnov statistic of a sample against a cdf.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double f = cdf(xs[k]);
    d = std::max({d, (k + 1) / n - f, f - k / n});
  }
  return d;
}

// Asymptotic KS critical value at level 0.001.
inline double ks_critical_001(std::size_t n) { return 1.9495 / std::sqrt(static_cast<double>(n)); }

// Total variation distance between an empirical histogram and an analytic
// pmf over 0..last (mass beyond `last` on either side is counted as well).
inline double tv_distance(const std::map<std::int64_t, std::int64_t>& counts, std::int64_t total,
                          std::int64_t last, const std::function<double(std::int64_t)>& pmf) {
  double d = 0.0;
  double emp_in = 0.0;
  double ana_in = 0.0;
  for (std::int64_t x = 0; x <= last; ++x) {
    const auto it = counts.find(x);
    const double e = it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
    const double a = pmf(x);
    d += std::fabs(e - a);
    emp_in += e;
    ana_in += a;
  }
  d += std::fabs((1.0 - emp_in) - (1.0 - ana_in));
  return 0.5 * d;
}

struct MeanEstimate {
  double mean;
  double standard_error;
};

inline MeanEstimate mean_and_se(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  const long double m = s / v.size();
  long double ss = 0.0L;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = static_cast<double>(ss / (v.size() - 1));
  return {static_cast<double>(m), std::sqrt(var / v.size())};
}

}  // namespace dgl::oracle
