#include "dgl/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dgl/errors.hpp"

namespace dgl::specfun {
namespace {

constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// log(1 + d) - d without cancellation, for |d| <= 0.5.
double log1pmx(double d) {
  // log1p(d) = 2 atanh(r) with r = d / (2 + d), and d - 2r = r d.
  const double r = d / (2.0 + d);
  const double r2 = r * r;
  double power = r * r2;
  double sum = 0.0;
  for (int k = 3; k < 200; k += 2) {
    const double term = power / k;
    sum += term;
    if (std::fabs(term) <= std::fabs(sum) * 1e-17) break;
    power *= r2;
  }
  return 2.0 * sum - r * d;
}

// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2] for a >= 10.
double stirling_correction(double a) {
  static constexpr double kCoef[] = {1.0 / 12.0,         -1.0 / 360.0,     1.0 / 1260.0,
                                     -1.0 / 1680.0,      1.0 / 1188.0,     -691.0 / 360360.0,
                                     1.0 / 156.0,        -3617.0 / 122400.0};
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  double power = inv;
  double sum = 0.0;
  for (double c : kCoef) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

// ln[x^a e^-x / Gamma(a)], the common prefactor of both gamma expansions.
// For large a the naive form cancels three terms of size a ln a; the
// Stirling rearrangement keeps the result accurate.
double log_gamma_prefix(double a, double x) {
  if (a < 10.0) return a * std::log(x) - x - log_gamma(a);
  const double d = (x - a) / a;
  // Far from x = a the ratio x / a is better conditioned than 1 + d.
  const double shape_term = std::fabs(d) > 0.5 ? std::log(x / a) - d : log1pmx(d);
  return a * shape_term + 0.5 * std::log(a) - 0.5 * std::log(2.0 * std::numbers::pi) -
         stirling_correction(a);
}

// sum_{n>=0} x^n / (a (a+1) ... (a+n)), so that P(a, x) = prefix * sum.
double lower_gamma_series(double a, double x, const Accuracy& acc) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n <= acc.max_iter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * acc.rel_tol) return sum;
  }
  throw TruncationError("incomplete gamma series did not converge (a = " + std::to_string(a) +
                        ", x = " + std::to_string(x) + ")");
}

// Continued fraction for Q(a, x) / prefix, modified Lentz evaluation.
double upper_gamma_fraction(double a, double x, const Accuracy& acc) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= acc.max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= acc.rel_tol) return h;
  }
  throw TruncationError("incomplete gamma continued fraction did not converge (a = " +
                        std::to_string(a) + ", x = " + std::to_string(x) + ")");
}

void check_gamma_args(double a, double x) {
  require(std::isfinite(a) && a > 0.0, "incomplete gamma requires a finite shape a > 0");
  require(!std::isnan(x) && x >= 0.0, "incomplete gamma requires x >= 0");
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_fraction(double a, double b, double x, const Accuracy& acc) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= acc.max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= acc.rel_tol) return h;
  }
  throw TruncationError("incomplete beta continued fraction did not converge (a = " +
                        std::to_string(a) + ", b = " + std::to_string(b) + ")");
}

}  // namespace

void Accuracy::validate() const {
  require(rel_tol > 0.0 && rel_tol <= 1e-3, "Accuracy.rel_tol must lie in (0, 1e-3]");
  require(max_iter >= 50, "Accuracy.max_iter must be at least 50");
}

double log_gamma(double a) {
  require(std::isfinite(a) && a > 0.0, "log_gamma requires a finite a > 0");
  int sign = 0;
  return ::lgamma_r(a, &sign);
}

GammaPair reg_gamma_pair(double a, double x, const Accuracy& acc) {
  check_gamma_args(a, x);
  acc.validate();
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  const double log_prefix = log_gamma_prefix(a, x);
  if (x < a + 1.0) {
    const double p = std::min(1.0, std::exp(log_prefix) * lower_gamma_series(a, x, acc));
    return {p, 1.0 - p};
  }
  const double q = std::min(1.0, std::exp(log_prefix) * upper_gamma_fraction(a, x, acc));
  return {1.0 - q, q};
}

double reg_lower_gamma(double a, double x, const Accuracy& acc) {
  return reg_gamma_pair(a, x, acc).lower;
}

double reg_upper_gamma(double a, double x, const Accuracy& acc) {
  return reg_gamma_pair(a, x, acc).upper;
}

double log_reg_upper_gamma(double a, double x, const Accuracy& acc) {
  check_gamma_args(a, x);
  acc.validate();
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < a + 1.0) {
    const double p = std::exp(log_gamma_prefix(a, x)) * lower_gamma_series(a, x, acc);
    return std::log1p(-std::min(p, 1.0));
  }
  return log_gamma_prefix(a, x) + std::log(upper_gamma_fraction(a, x, acc));
}

std::optional<double> reg_lower_gamma_series(double a, double x, int m_max) {
  check_gamma_args(a, x);
  require(m_max >= 1, "reg_lower_gamma_series requires m_max >= 1");
  if (x == 0.0) return 0.0;
  // term_m = (-x)^m / m!; the m-th summand is scale * term_m / (m + a).
  // Extended precision buys back some of the digits lost to cancellation.
  const long double scale = std::exp(static_cast<long double>(a) * std::log(static_cast<long double>(x)) -
                                     log_gamma(a));
  long double term = 1.0L;
  long double sum = 1.0L / a;
  if (!(scale / a <= kSeriesTermCap)) return std::nullopt;
  for (int m = 1; m <= m_max; ++m) {
    term *= -static_cast<long double>(x) / m;
    const long double summand = term / (m + a);
    if (!(std::fabs(scale * summand) <= kSeriesTermCap)) return std::nullopt;
    sum += summand;
  }
  return static_cast<double>(scale * sum);
}

BetaPair reg_inc_beta_pair(double a, double b, double x, double y, const Accuracy& acc) {
  require(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0,
          "incomplete beta requires finite a > 0 and b > 0");
  require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0,
          "incomplete beta requires x in [0, 1]");
  acc.validate();
  if (x == 0.0) return {0.0, 1.0};
  if (y == 0.0) return {1.0, 0.0};
  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                           b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double lower = std::min(1.0, front * beta_fraction(a, b, x, acc) / a);
    return {lower, 1.0 - lower};
  }
  const double upper = std::min(1.0, front * beta_fraction(b, a, y, acc) / b);
  return {1.0 - upper, upper};
}

double reg_inc_beta(double a, double b, double x, const Accuracy& acc) {
  require(!std::isnan(x), "incomplete beta requires x in [0, 1]");
  return reg_inc_beta_pair(a, b, x, 1.0 - x, acc).lower;
}

double sample_gamma(double shape, Rng& rng) {
  require(std::isfinite(shape) && shape > 0.0, "sample_gamma requires a finite shape > 0");
  if (shape < 1.0) {
    const double boost = std::log(rng.uniform()) / shape;
    return sample_gamma(shape + 1.0, rng) * std::exp(boost);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace dgl::specfun
