#pragma once

#include <stdexcept>
#include <string>

namespace dgl {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A requested moment or functional is infinite for the given parameters.
class ExistenceError : public Error {
 public:
  using Error::Error;
};

// A generating function or entropy series diverges.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// An adaptive series could not reach its tail tolerance within the
// iteration cap.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A ratio whose denominator has underflowed to zero.
class SaturationError : public Error {
 public:
  using Error::Error;
};

// The comparison horizon does not cover enough probability mass.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// The data cannot identify the model (e.g. a single distinct value).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message names the offending line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgl
