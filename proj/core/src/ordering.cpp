#include "dgl/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dgl/errors.hpp"
#include "lattice.hpp"

namespace dgl {

std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::kFirstDominates:
      return "first-dominates";
    case Dominance::kSecondDominates:
      return "second-dominates";
    case Dominance::kCrossing:
      return "crossing";
    case Dominance::kIndistinguishable:
      return "indistinguishable";
  }
  return "unknown";
}

std::string_view to_string(MeanOrder m) {
  switch (m) {
    case MeanOrder::kFirstLarger:
      return "first-larger";
    case MeanOrder::kSecondLarger:
      return "second-larger";
    case MeanOrder::kEqual:
      return "equal";
  }
  return "unknown";
}

std::int64_t default_horizon(const Dgld& d1, const Dgld& d2) {
  const std::int64_t q = std::max(d1.quantile(kHorizonMass), d2.quantile(kHorizonMass));
  return std::max<std::int64_t>(1, 2 * q);
}

DominanceReport stochastic_compare(const Dgld& d1, const Dgld& d2,
                                   std::optional<std::int64_t> horizon, double tol) {
  if (!(tol >= 0.0)) throw DomainError("stochastic_compare requires tol >= 0");
  const std::int64_t h = horizon.value_or(default_horizon(d1, d2));
  if (h < 1) throw DomainError("stochastic_compare requires horizon >= 1");
  for (const Dgld* d : {&d1, &d2}) {
    const double mass = d->cdf(static_cast<double>(h));
    if (mass < kHorizonMass) {
      throw HorizonError("horizon " + std::to_string(h) + " covers only " +
                         detail::num(mass) + " of the mass; at least 0.999 is required");
    }
  }

  DominanceReport report;
  report.horizon = h;
  bool first_above = false;
  bool second_above = false;
  for (std::int64_t x = 0; x <= h; ++x) {
    const double gap = d1.survival(x) - d2.survival(x);
    if (gap > tol) first_above = true;
    if (-gap > tol) second_above = true;
    if (std::fabs(gap) > report.max_gap) {
      report.max_gap = std::fabs(gap);
      report.gap_location = x;
    }
  }
  if (first_above && second_above) {
    report.direction = Dominance::kCrossing;
  } else if (first_above) {
    report.direction = Dominance::kFirstDominates;
  } else if (second_above) {
    report.direction = Dominance::kSecondDominates;
  } else {
    report.direction = Dominance::kIndistinguishable;
  }
  return report;
}

ExpectationReport expectation_compare(const Dgld& d1, const Dgld& d2, double tail_tol) {
  const MomentSpec spec{1, tail_tol};
  ExpectationReport report;
  report.mean1 = d1.moment(spec);
  report.mean2 = d2.moment(spec);
  // Truncation bounds plus a few ulps of summation rounding.
  const double slack = report.mean1.tail_bound + report.mean2.tail_bound +
                       1e-13 * std::max(std::fabs(report.mean1.value), std::fabs(report.mean2.value));
  const double diff = report.mean1.value - report.mean2.value;
  if (diff > slack) {
    report.order = MeanOrder::kFirstLarger;
  } else if (-diff > slack) {
    report.order = MeanOrder::kSecondLarger;
  } else {
    report.order = MeanOrder::kEqual;
  }
  return report;
}

}  // namespace dgl
