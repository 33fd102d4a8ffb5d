#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "dgl/errors.hpp"
#include "dgl/orderstats.hpp"
#include "oracles.hpp"

using dgl::Dgld;
using dgl::HeteroParams;
using dgl::OrderSpec;
using dgl::Params;

namespace {

const Params kUnit{1, 1, 1};

}  // namespace

TEST(OrderSpec, Validation) {
  EXPECT_NO_THROW((OrderSpec{3, 2}.validate()));
  EXPECT_THROW((OrderSpec{3, 0}.validate()), dgl::DomainError);
  EXPECT_THROW((OrderSpec{3, 4}.validate()), dgl::DomainError);
  EXPECT_THROW((OrderSpec{0, 1}.validate()), dgl::DomainError);
  EXPECT_THROW(dgl::order_stat_pmf(Dgld(kUnit), {2, 3}, 0), dgl::DomainError);
}

TEST(HeteroParams, RejectsEmptyAndInvalid) {
  EXPECT_THROW(HeteroParams({}), dgl::DomainError);
  EXPECT_THROW(HeteroParams({{1, 1, 1}, {1, 0, 1}}), dgl::DomainError);
  EXPECT_EQ(HeteroParams::iid(kUnit, 4).size(), 4u);
}

TEST(OrderStatPmf, SingleObservationIsPmf) {
  for (const Params& p : {Params{1, 1, 1}, Params{0.4, 2.5, 3}, Params{2, 0.3, 0.5}}) {
    const Dgld d(p);
    for (std::int64_t x = 0; x <= 60; ++x)
      EXPECT_NEAR(dgl::order_stat_pmf(d, {1, 1}, x), d.pmf(x), 1e-15);
  }
}

TEST(OrderStatPmf, Examples) {
  const Dgld d(kUnit);
  EXPECT_NEAR(dgl::order_stat_pmf(d, {2, 2}, 0), 0.25, 1e-15);
  const double f1 = 2.0 / 3.0;
  const double f0 = 0.5;
  const double want = dgl::oracle::order_stat_cdf_binomial(3, 2, f1) -
                      dgl::oracle::order_stat_cdf_binomial(3, 2, f0);
  EXPECT_NEAR(dgl::order_stat_pmf(d, {3, 2}, 1), want, 1e-14);
}

TEST(OrderStatPmf, MatchesBinomialTailOracle) {
  for (const Params& p : {Params{1, 1, 1}, Params{0.5, 2, 1.5}}) {
    const Dgld d(p);
    for (std::int64_t n : {2, 3, 5, 9}) {
      for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t x = 0; x <= 50; ++x) {
          const double want = dgl::oracle::order_stat_cdf_binomial(n, i, d.cdf(x)) -
                              (x == 0 ? 0.0 : dgl::oracle::order_stat_cdf_binomial(n, i, d.cdf(x - 1)));
          EXPECT_NEAR(dgl::order_stat_pmf(d, {n, i}, x), want, 1e-10) << n << " " << i << " " << x;
        }
      }
    }
  }
}

TEST(OrderStatPmf, ExchangeabilityIdentity) {
  for (const Params& p : {Params{1, 1, 1}, Params{0.3, 4, 2}, Params{1.5, 0.6, 0.7}}) {
    const Dgld d(p);
    for (std::int64_t n : {1, 3, 7, 20}) {
      for (std::int64_t x = 0; x <= 80; x += 3) {
        double s = 0.0;
        for (std::int64_t i = 1; i <= n; ++i) s += dgl::order_stat_pmf(d, {n, i}, x);
        EXPECT_NEAR(s, n * d.pmf(x), 1e-10);
      }
    }
  }
}

TEST(OrderStatPmf, ExtremesMatchMinAndMax) {
  for (const Params& p : {Params{1, 1, 1}, Params{0.3, 4, 2}}) {
    const Dgld d(p);
    for (std::int64_t n : {2, 5, 11}) {
      const auto h = HeteroParams::iid(p, n);
      for (std::int64_t x = 0; x <= 60; ++x) {
        EXPECT_NEAR(dgl::order_stat_pmf(d, {n, n}, x), dgl::max_pmf(h, x), 1e-12);
        EXPECT_NEAR(dgl::order_stat_pmf(d, {n, 1}, x), dgl::min_pmf(h, x), 1e-12);
      }
    }
  }
}

TEST(MinMax, Examples) {
  const auto pair = HeteroParams::iid(kUnit, 2);
  EXPECT_NEAR(dgl::min_pmf(pair, 0), 0.75, 1e-15);
  EXPECT_NEAR(dgl::max_pmf(pair, 0), 0.25, 1e-15);
  const HeteroParams one({{0.4, 2.5, 3}});
  const Dgld d({0.4, 2.5, 3});
  for (std::int64_t x = 0; x <= 30; ++x) {
    EXPECT_NEAR(dgl::min_pmf(one, x), d.pmf(x), 1e-15);
    EXPECT_NEAR(dgl::max_pmf(one, x), d.pmf(x), 1e-15);
  }
  EXPECT_EQ(dgl::min_pmf(pair, -1), 0.0);
  EXPECT_EQ(dgl::max_pmf(pair, -1), 0.0);
}

TEST(MinMax, HeterogeneousProductForms) {
  const std::vector<Params> ps{{1, 1, 1}, {0.5, 2, 3}, {2, 0.4, 0.5}};
  const HeteroParams h(ps);
  for (std::int64_t x = 0; x <= 40; ++x) {
    double s_x = 1, s_next = 1, f_x = 1, f_prev = 1;
    for (const auto& p : ps) {
      const Dgld d(p);
      s_x *= d.survival(x);
      s_next *= d.survival(x + 1);
      f_x *= d.cdf(x);
      f_prev *= d.cdf(x - 1);
    }
    EXPECT_NEAR(dgl::min_pmf(h, x), s_x - s_next, 1e-14);
    EXPECT_NEAR(dgl::max_pmf(h, x), f_x - f_prev, 1e-14);
    EXPECT_GE(dgl::min_pmf(h, x), 0.0);
    EXPECT_GE(dgl::max_pmf(h, x), 0.0);
  }
}

TEST(MinMax, NormalizeForIidLists) {
  for (std::int64_t n : {2, 10, 100}) {
    const Params p{0.3, 1.5, 2.0};
    const auto h = HeteroParams::iid(p, n);
    // min concentrates near 0; max moves out like n^c.
    double smin = 0.0;
    for (std::int64_t x = 0; x <= 2000; ++x) smin += dgl::min_pmf(h, x);
    EXPECT_NEAR(smin, 1.0, 1e-10) << n;
    double smax = 0.0;
    std::int64_t x = 0;
    for (; x <= 1'000'000; ++x) {
      smax += dgl::max_pmf(h, x);
      if (1.0 - smax < 1e-10) break;
    }
    const double cdf_at = std::pow(Dgld(p).cdf(x), static_cast<double>(n));
    EXPECT_NEAR(smax, cdf_at, 1e-12) << n;
    EXPECT_LT(1.0 - smax, 1e-10) << n;
  }
}

TEST(MinMax, LargeListDoesNotUnderflow) {
  const auto h = HeteroParams::iid({1, 1, 1}, 10'000);
  // P(min = 0) = 1 - 2^-10000 rounds to 1; P(max = 0) = 2^-10000 underflows.
  EXPECT_EQ(dgl::min_pmf(h, 0), 1.0);
  EXPECT_EQ(dgl::max_pmf(h, 0), 0.0);
  // P(max = w) for w near the bulk (F(w)^n with F = 1 - 1/(w+2)).
  const std::int64_t w = 10'000;
  const double want = std::exp(10'000 * std::log1p(-1.0 / (w + 2))) -
                      std::exp(10'000 * std::log1p(-1.0 / (w + 1)));
  EXPECT_NEAR(dgl::max_pmf(h, w) / want, 1.0, 1e-10);
}

TEST(RangeZero, Examples) {
  EXPECT_EQ(dgl::range_zero_prob(Dgld({0.4, 2, 1}), 1).value, 1.0);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const auto r = dgl::range_zero_prob(Dgld(kUnit), 2);
  EXPECT_NEAR(r.value, pi2 / 3.0 - 3.0, 1e-6);
  EXPECT_LE(std::fabs(r.value - (pi2 / 3.0 - 3.0)), r.tail_bound + 1e-13);
  EXPECT_THROW(dgl::range_zero_prob(Dgld(kUnit), 0), dgl::DomainError);
}

TEST(RangeZero, MatchesDirectSum) {
  for (const Params& p : {Params{0.5, 2, 1.5}, Params{2, 0.5, 1}}) {
    const Dgld d(p);
    for (std::int64_t n : {2, 3, 6}) {
      const double want = dgl::oracle::partial_sum(0, 200'000, [&](std::int64_t y) {
        return std::pow(static_cast<long double>(d.pmf(y)), n);
      });
      EXPECT_NEAR(dgl::range_zero_prob(d, n).value, want, 1e-9) << n;
    }
  }
}

TEST(RangeZero, MonteCarlo) {
  const Dgld d(kUnit);
  dgl::Rng rng(8);
  constexpr int kTrials = 1'000'000;
  int hits = 0;
  for (int k = 0; k < kTrials; ++k) hits += d.sample(rng) == d.sample(rng);
  const double p = dgl::range_zero_prob(d, 2).value;
  EXPECT_NEAR(hits / double(kTrials), p, 3.0 * std::sqrt(p * (1 - p) / kTrials));
}

TEST(OrderStatPmf, MedianOfThreeSimulation) {
  const Dgld d(kUnit);
  dgl::Rng rng(31);
  constexpr int kTrials = 100'000;
  std::map<std::int64_t, std::int64_t> counts;
  for (int k = 0; k < kTrials; ++k) {
    std::array<std::int64_t, 3> v{d.sample(rng), d.sample(rng), d.sample(rng)};
    std::sort(v.begin(), v.end());
    ++counts[v[1]];
  }
  const double tv = dgl::oracle::tv_distance(counts, kTrials, 200, [&](std::int64_t x) {
    return dgl::order_stat_pmf(d, {3, 2}, x);
  });
  EXPECT_LT(tv, 0.01);
}
