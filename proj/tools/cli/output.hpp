#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "dgl/glomax.hpp"

namespace dgl::cli {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

// Rows of a fixed column set. A scalar record is a one-row table that is
// emitted as a JSON object rather than an array.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool scalar = false;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { kCsv, kJson };

// Doubles are printed with 17 significant digits (%.17g).
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);

// {"subcommand": ..., "params": [...] or {...}, "result": ...}
void write_json(std::ostream& os, const std::string& subcommand,
                const std::vector<Params>& params, const Table& t);

}  // namespace dgl::cli
