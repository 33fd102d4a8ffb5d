#include "dgl/estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "dgl/dgld.hpp"
#include "dgl/errors.hpp"
#include "dgl/random.hpp"
#include "lattice.hpp"

namespace dgl {
namespace {

using Point = std::array<double, 3>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Params from_log(const Point& z) { return {std::exp(z[0]), std::exp(z[1]), std::exp(z[2])}; }

Point to_log(const Params& p) { return {std::log(p.c), std::log(p.alpha), std::log(p.theta)}; }

struct SimplexRun {
  Point best;
  double value = kInf;
  int iterations = 0;
  bool converged = false;
};

// GSL's nmsimplex2 never accepts a non-finite objective value.
constexpr double kPenalty = 1e300;

using Objective = std::function<double(const Point&)>;

double gsl_objective(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  const double value = f({gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2)});
  return std::isfinite(value) ? std::min(value, kPenalty) : kPenalty;
}

// Nelder-Mead (GSL nmsimplex2) from `start` with an initial simplex of edge
// `step`. Converged once the simplex size falls below kSimplexDiameterTol.
SimplexRun nelder_mead(const Objective& f, const Point& start, double step, int max_iter) {
  constexpr std::size_t kDim = 3;
  using VectorPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  VectorPtr x(gsl_vector_alloc(kDim), &gsl_vector_free);
  VectorPtr steps(gsl_vector_alloc(kDim), &gsl_vector_free);
  for (std::size_t i = 0; i < kDim; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(steps.get(), step);

  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim),
      &gsl_multimin_fminimizer_free);
  gsl_multimin_function fn{&gsl_objective, kDim, const_cast<Objective*>(&f)};

  // Report failures through return codes rather than GSL's aborting handler.
  struct HandlerGuard {
    gsl_error_handler_t* previous = gsl_set_error_handler_off();
    ~HandlerGuard() { gsl_set_error_handler(previous); }
  } guard;

  SimplexRun run;
  run.best = start;
  if (gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), steps.get()) != GSL_SUCCESS) {
    run.value = f(start);
    return run;
  }
  while (run.iterations < max_iter) {
    ++run.iterations;
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(solver.get());
    if (gsl_multimin_test_size(size, kSimplexDiameterTol) == GSL_SUCCESS) {
      run.converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(solver.get());
  for (std::size_t i = 0; i < kDim; ++i) run.best[i] = gsl_vector_get(best, i);
  run.value = gsl_multimin_fminimizer_minimum(solver.get());
  if (run.value >= kPenalty) run.value = kInf;
  return run;
}

}  // namespace

CountSample CountSample::from_values(std::span<const std::int64_t> values) {
  std::map<std::int64_t, std::int64_t> table;
  for (const auto v : values) ++table[v];
  return from_table(table);
}

CountSample CountSample::from_table(const std::map<std::int64_t, std::int64_t>& table) {
  CountSample s;
  for (const auto& [value, count] : table) {
    if (value < 0) {
      throw DomainError("count data must be non-negative (got " + std::to_string(value) + ")");
    }
    if (count < 1) {
      throw DomainError("frequency for value " + std::to_string(value) + " must be >= 1");
    }
    s.size_ += count;
  }
  if (s.size_ < 1) throw DomainError("count sample must contain at least one observation");
  s.table_ = table;
  return s;
}

double CountSample::mean() const {
  double total = 0.0;
  for (const auto& [value, count] : table_) total += static_cast<double>(value) * count;
  return total / static_cast<double>(size_);
}

double log_likelihood(const Params& p, const CountSample& data) {
  const Dgld d(p);
  detail::Accumulator ll;
  for (const auto& [value, count] : data.table()) {
    const double g = d.pmf(value);
    if (!(g > 0.0)) return -kInf;
    ll.add(static_cast<double>(count) * std::log(g));
  }
  return ll.value();
}

std::vector<Params> start_design(const CountSample& data, int n_starts, std::uint64_t seed) {
  if (n_starts < 1) throw DomainError("fit requires n_starts >= 1");
  const double m = data.mean();
  const std::array<double, 2> cs{0.3, 1.0};
  const std::array<double, 2> alphas{0.7, 2.0};
  const std::array<double, 2> thetas{0.5 * m + 0.5, 2.0 * m + 1.0};
  Rng rng(seed);
  std::vector<Params> starts;
  starts.reserve(static_cast<std::size_t>(n_starts));
  for (int k = 0; k < n_starts; ++k) {
    const int cell = k % 8;
    Params p{cs[cell / 4], alphas[(cell / 2) % 2], thetas[cell % 2]};
    p.c *= std::exp(0.1 * rng.normal());
    p.alpha *= std::exp(0.1 * rng.normal());
    p.theta *= std::exp(0.1 * rng.normal());
    starts.push_back(p);
  }
  return starts;
}

FitResult fit_mle(const CountSample& data, int n_starts, std::uint64_t seed) {
  if (data.distinct() < 2) {
    throw DegenerateDataError(
        "fit requires at least 2 distinct values; with one value the likelihood is maximized "
        "on the boundary of the parameter space");
  }
  const auto starts = start_design(data, n_starts, seed);
  const auto objective = [&data](const Point& z) {
    for (double v : z) {
      if (!(std::fabs(v) < 30.0)) return kInf;
    }
    const double ll = log_likelihood(from_log(z), data);
    return std::isfinite(ll) ? -ll : kInf;
  };

  FitResult best;
  best.log_likelihood = -kInf;
  best.n_starts = n_starts;
  bool any_converged = false;
  for (const auto& start : starts) {
    SimplexRun run = nelder_mead(objective, to_log(start), 0.3, kSimplexMaxIterations);
    int iterations = run.iterations;
    if (run.converged) {
      // Restart from the optimum with a fresh simplex to escape a collapsed one.
      const SimplexRun again = nelder_mead(objective, run.best, 0.05, kSimplexMaxIterations);
      iterations += again.iterations;
      if (again.value <= run.value) run = again;
      run.converged = again.converged;
    }
    any_converged = any_converged || run.converged;
    const double ll = -run.value;
    // Strict comparison keeps the earliest start on ties.
    if (ll > best.log_likelihood) {
      best.params = from_log(run.best);
      best.log_likelihood = ll;
      best.iterations = iterations;
      best.converged = run.converged;
    }
  }
  if (best.log_likelihood == -kInf) best.params = starts.front();
  if (!any_converged) best.converged = false;
  return best;
}

}  // namespace dgl
