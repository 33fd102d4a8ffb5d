#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "dgl/dgld.hpp"
#include "dgl/estimate.hpp"
#include "dgl/orderstats.hpp"
#include "dgl/specfun.hpp"

namespace {

void BM_RegLowerGamma(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 10.0;
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dgl::specfun::reg_lower_gamma(a, x));
    x = x > 50.0 ? 0.01 : x + 0.37;
  }
}
BENCHMARK(BM_RegLowerGamma)->Arg(3)->Arg(20)->Arg(250);

void BM_Pmf(benchmark::State& state) {
  const dgl::Dgld d({0.5, 2.0, 1.5});
  std::int64_t x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.pmf(x));
    x = (x + 1) % 1000;
  }
}
BENCHMARK(BM_Pmf);

void BM_Sample(benchmark::State& state) {
  const dgl::Dgld d({0.5, static_cast<double>(state.range(0)) / 10.0, 1.5});
  dgl::Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(rng));
}
BENCHMARK(BM_Sample)->Arg(3)->Arg(20);

void BM_Mean(benchmark::State& state) {
  const dgl::Dgld d({0.4, 2.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(d.moment({1, 1e-10}).value);
}
BENCHMARK(BM_Mean)->Unit(benchmark::kMillisecond);

void BM_CumulativeResidualEntropy(benchmark::State& state) {
  const dgl::Dgld d({0.5, 1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(d.cre_entropy(1e-8).value);
}
BENCHMARK(BM_CumulativeResidualEntropy)->Unit(benchmark::kMillisecond);

void BM_OrderStatPmf(benchmark::State& state) {
  const dgl::Dgld d({1.0, 1.0, 1.0});
  const dgl::OrderSpec spec{state.range(0), state.range(0) / 2 + 1};
  std::int64_t x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dgl::order_stat_pmf(d, spec, x));
    x = (x + 1) % 100;
  }
}
BENCHMARK(BM_OrderStatPmf)->Arg(3)->Arg(101);

void BM_FitMle(benchmark::State& state) {
  const dgl::Dgld d({0.5, 2.0, 1.5});
  dgl::Rng rng(11);
  std::vector<std::int64_t> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = d.sample(rng);
  const auto data = dgl::CountSample::from_values(xs);
  for (auto _ : state) benchmark::DoNotOptimize(dgl::fit_mle(data, 8, 1).log_likelihood);
}
BENCHMARK(BM_FitMle)->Arg(1000)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
