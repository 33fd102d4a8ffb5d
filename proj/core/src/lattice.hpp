#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "dgl/dgld.hpp"
#include "dgl/errors.hpp"

namespace dgl::detail {

// Neumaier compensated summation.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double pmf_from_split(const specfun::GammaPair& at_x, const specfun::GammaPair& at_next) {
  const double g = at_next.lower <= 0.5 ? at_next.lower - at_x.lower : at_x.upper - at_next.upper;
  return g < 1e-300 ? 0.0 : g;
}

// Walks x = start, start + 1, ... producing pmf(x) with one incomplete gamma
// evaluation per step. The split at the upper lattice point is carried over.
class PmfWalker {
 public:
  PmfWalker(const Dgld& d, std::int64_t start) : d_(d), x_(start), at_x_(d.split(start)) {}

  // pmf at the current point; advances to the next one.
  double next() {
    const specfun::GammaPair at_next = d_.split(x_ + 1);
    const double g = pmf_from_split(at_x_, at_next);
    at_x_ = at_next;
    ++x_;
    return g;
  }

  std::int64_t position() const { return x_; }

  // P(X >= position()).
  double survival() const { return at_x_.upper; }

 private:
  const Dgld& d_;
  std::int64_t x_;
  specfun::GammaPair at_x_;
};

// Shortest readable rendering of a number for error messages.
inline std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline void check_tail_tol(double tol, const char* who) {
  if (!(tol > 0.0 && tol <= 1e-4)) {
    throw DomainError(std::string(who) + ": tail tolerance must lie in (0, 1e-4]");
  }
}

[[noreturn]] inline void throw_truncation(const char* who, double achieved, double wanted) {
  throw TruncationError(std::string(who) + ": tail bound " + num(achieved) +
                        " still above tolerance " + num(wanted) + " after " +
                        std::to_string(kMaxSeriesTerms) + " terms");
}

}  // namespace dgl::detail
