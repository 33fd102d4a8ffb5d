#pragma once

#include <cstdint>
#include <vector>

#include "dgl/dgld.hpp"

namespace dgl {

// Rank i of n independent draws, 1 <= i <= n.
struct OrderSpec {
  std::int64_t n = 1;
  std::int64_t i = 1;

  void validate() const;
};

// Independent, possibly non-identical DGLD components. Never empty.
class HeteroParams {
 public:
  explicit HeteroParams(std::vector<Params> components);

  // n independent copies of one distribution.
  static HeteroParams iid(const Params& p, std::int64_t n);

  const std::vector<Dgld>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }

 private:
  std::vector<Dgld> components_;
};

// P(X_{i:n} = x) as a difference of regularized incomplete betas
// I_{F(x)}(i, n - i + 1) - I_{F(x-1)}(i, n - i + 1); 0 for x < 0.
double order_stat_pmf(const Dgld& d, const OrderSpec& spec, std::int64_t x);

// P(min_i X_i = u) = prod_i P(X_i >= u) - prod_i P(X_i >= u + 1); 0 for u < 0.
double min_pmf(const HeteroParams& h, std::int64_t u);

// P(max_i X_i = w) = prod_i F_i(w) - prod_i F_i(w - 1); 0 for w < 0.
double max_pmf(const HeteroParams& h, std::int64_t w);

// P(X_{1:n} = X_{n:n}) = sum_y pmf(y)^n for n iid draws.
SeriesValue range_zero_prob(const Dgld& d, std::int64_t n, double tail_tol = kDefaultTailTol);

}  // namespace dgl
