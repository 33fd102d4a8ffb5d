#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dgl/glomax.hpp"

namespace dgl {

// Non-negative integer observations, stored as a frequency table.
class CountSample {
 public:
  static CountSample from_values(std::span<const std::int64_t> values);
  static CountSample from_table(const std::map<std::int64_t, std::int64_t>& table);

  const std::map<std::int64_t, std::int64_t>& table() const noexcept { return table_; }
  std::int64_t size() const noexcept { return size_; }
  std::size_t distinct() const noexcept { return table_.size(); }
  double mean() const;

 private:
  std::map<std::int64_t, std::int64_t> table_;
  std::int64_t size_ = 0;
};

struct FitResult {
  Params params;
  double log_likelihood = 0.0;
  bool converged = false;
  int iterations = 0;  // simplex iterations spent by the winning start
  int n_starts = 0;

  // 2k - 2 log L with k = 3 free parameters.
  double aic() const { return 6.0 - 2.0 * log_likelihood; }
};

// sum_v count(v) ln pmf(v). Returns -infinity if some observed value has
// zero probability in double precision.
double log_likelihood(const Params& p, const CountSample& data);

// Stopping rules for each simplex run.
inline constexpr double kSimplexDiameterTol = 1e-6;
inline constexpr int kSimplexMaxIterations = 500;

// Deterministic multi-start design: the 8-point lattice
// c in {0.3, 1}, alpha in {0.7, 2}, theta in {0.5 m + 0.5, 2 m + 1}
// (m the sample mean), cycled when n_starts > 8, each point multiplied by
// seeded log-normal jitter.
std::vector<Params> start_design(const CountSample& data, int n_starts, std::uint64_t seed);

// Maximum likelihood by Nelder-Mead in (ln c, ln alpha, ln theta) from each
// start of start_design(). Throws DegenerateDataError with fewer than two
// distinct values. Non-convergence is reported in FitResult::converged.
FitResult fit_mle(const CountSample& data, int n_starts = 8, std::uint64_t seed = 1);

}  // namespace dgl
