#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dgl/estimate.hpp"

namespace dgl::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kMathError = 2,
  kIoError = 3,
};

// Parses count data: one non-negative integer per line, or a CSV frequency
// table whose first line is the header `value,count`. Blank lines are
// skipped. Throws dgl::ParseError naming the 1-based line number.
CountSample read_counts(std::istream& in);

// Executes one command line (args excludes the program name). Results go to
// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dgl::cli
