#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dgl/dgld.hpp"

namespace dgl {

enum class Dominance {
  kFirstDominates,   // S1(x) >= S2(x) everywhere, strictly beyond tol somewhere
  kSecondDominates,
  kCrossing,         // each exceeds the other beyond tol somewhere
  kIndistinguishable,
};

std::string_view to_string(Dominance d);

// Pointwise comparison of the survival functions P(X >= x) over 0..horizon.
struct DominanceReport {
  Dominance direction = Dominance::kIndistinguishable;
  std::int64_t horizon = 1;
  double max_gap = 0.0;         // max_x |S1(x) - S2(x)|
  std::int64_t gap_location = 0;
};

inline constexpr double kDefaultDominanceTol = 1e-12;

// Required cdf mass at the horizon for both distributions.
inline constexpr double kHorizonMass = 0.999;

// Twice the larger of the two 0.999-quantiles.
std::int64_t default_horizon(const Dgld& d1, const Dgld& d2);

// Throws HorizonError if either distribution has less than 99.9% of its
// mass on 0..horizon.
DominanceReport stochastic_compare(const Dgld& d1, const Dgld& d2,
                                   std::optional<std::int64_t> horizon = std::nullopt,
                                   double tol = kDefaultDominanceTol);

enum class MeanOrder { kFirstLarger, kSecondLarger, kEqual };

std::string_view to_string(MeanOrder m);

struct ExpectationReport {
  MeanOrder order = MeanOrder::kEqual;
  SeriesValue mean1;
  SeriesValue mean2;
};

// Compares E[X1] and E[X2]. Means closer than the sum of their truncation
// bounds are reported as equal. Throws ExistenceError unless both c < 1.
ExpectationReport expectation_compare(const Dgld& d1, const Dgld& d2,
                                      double tail_tol = kDefaultTailTol);

}  // namespace dgl
