#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <type_traits>

#include <json.hpp>

namespace dgl::cli {
namespace {

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

// Numbers are written by hand (17 significant digits); nlohmann::json only
// handles string escaping.
std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// Non-finite doubles have no JSON spelling; they are emitted as null.
std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return std::isfinite(*d) ? format_number(*d) : "null";
  }
  if (const auto* s = std::get_if<std::string>(&c)) return json_string(*s);
  return csv_cell(c);
}

void write_row_object(std::ostream& os, const Table& t, const std::vector<Cell>& row) {
  os << '{';
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k) os << ',';
    os << json_string(t.columns[k]) << ':' << json_cell(row[k]);
  }
  os << '}';
}

void write_params(std::ostream& os, const Params& p) {
  os << "{\"c\":" << format_number(p.c) << ",\"alpha\":" << format_number(p.alpha)
     << ",\"theta\":" << format_number(p.theta) << '}';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const std::string& subcommand,
                const std::vector<Params>& params, const Table& t) {
  os << "{\"subcommand\":" << json_string(subcommand) << ",\"params\":";
  if (params.size() == 1) {
    write_params(os, params.front());
  } else {
    os << '[';
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (k) os << ',';
      write_params(os, params[k]);
    }
    os << ']';
  }
  os << ",\"result\":";
  if (t.scalar && t.rows.size() == 1) {
    write_row_object(os, t, t.rows.front());
  } else {
    os << '[';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (r) os << ',';
      write_row_object(os, t, t.rows[r]);
    }
    os << ']';
  }
  os << "}\n";
}

}  // namespace dgl::cli
