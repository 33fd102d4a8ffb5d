#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "dgl/dgld.hpp"
#include "dgl/errors.hpp"
#include "dgl/orderstats.hpp"
#include "dgl/ordering.hpp"
#include "output.hpp"

namespace dgl::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<double> c;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::vector<std::string> dists;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out_path;

  std::vector<std::int64_t> xs;
  std::vector<double> real_xs;
  std::optional<std::int64_t> max_x;
  std::vector<double> qs;
  std::vector<double> ss;
  std::vector<double> ts;
  std::int64_t n = 0;
  std::int64_t rank = 0;
  int r = 1;
  std::optional<std::int64_t> horizon;
  std::string data_path;
  int starts = 8;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

Params parse_dist(const std::string& spec) {
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const std::string t = trim(item);
      values.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw UsageError("--dist expects c,alpha,theta (got '" + spec + "')");
    }
  }
  if (values.size() != 3) throw UsageError("--dist expects c,alpha,theta (got '" + spec + "')");
  return {values[0], values[1], values[2]};
}

std::vector<Params> collect_params(const Options& o) {
  std::vector<Params> out;
  const bool any_single = o.c || o.alpha || o.theta;
  if (any_single) {
    if (!(o.c && o.alpha && o.theta)) {
      throw UsageError("--c, --alpha and --theta must be given together");
    }
    out.push_back({*o.c, *o.alpha, *o.theta});
  }
  for (const auto& d : o.dists) out.push_back(parse_dist(d));
  for (const auto& p : out) p.validate();
  return out;
}

Params single_params(const Options& o) {
  const auto ps = collect_params(o);
  if (ps.size() != 1) {
    throw UsageError("this subcommand needs exactly one distribution (--c/--alpha/--theta or --dist)");
  }
  return ps.front();
}

double tail_tol(const Options& o) { return o.tol.value_or(kDefaultTailTol); }

template <class T>
const std::vector<T>& require_list(const std::vector<T>& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing required option ") + flag);
  return v;
}

std::int64_t tabulation_limit(const Dgld& d, const Options& o) {
  if (o.max_x) {
    if (*o.max_x < 0) throw UsageError("--max-x must be >= 0");
    return *o.max_x;
  }
  return d.quantile(0.9999);
}

Table cmd_point(const Dgld& d, const Options& o, const std::string& which) {
  Table t;
  t.columns = {"x", which};
  if (which == "cdf") {
    for (const double x : require_list(o.real_xs, "--x")) t.add({x, d.cdf(x)});
    return t;
  }
  for (const std::int64_t x : require_list(o.xs, "--x")) {
    t.add({x, which == "pmf" ? d.pmf(x) : d.hazard(x)});
  }
  return t;
}

Table cmd_tabulate(const Dgld& d, const Options& o) {
  Table t;
  t.columns = {"x", "pmf", "cdf", "survival", "hazard"};
  const std::int64_t last = tabulation_limit(d, o);
  for (std::int64_t x = 0; x <= last; ++x) {
    const double s = d.survival(x);
    const double g = d.pmf(x);
    t.add({x, g, d.cdf(static_cast<double>(x)), s, s > 0.0 ? g / s : std::nan("")});
  }
  return t;
}

Table cmd_mode(const Dgld& d) {
  Table t;
  t.scalar = true;
  t.columns = {"mode", "continuous_mode"};
  t.add({d.mode(), gld_mode(d.params())});
  return t;
}

Table cmd_quantile(const Dgld& d, const Options& o) {
  Table t;
  t.columns = {"q", "x"};
  for (const double q : require_list(o.qs, "--q")) t.add({q, d.quantile(q)});
  return t;
}

Table cmd_sample(const Dgld& d, const Options& o) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  Table t;
  t.columns = {"value"};
  Rng rng(o.seed);
  t.rows.reserve(static_cast<std::size_t>(o.n));
  for (std::int64_t k = 0; k < o.n; ++k) t.add({d.sample(rng)});
  return t;
}

Table cmd_moments(const Dgld& d, const Options& o) {
  if (o.r < 1) throw UsageError("--r must be >= 1");
  const auto m = d.moment({o.r, tail_tol(o)});
  const auto f = d.factorial_moment(o.r, tail_tol(o));
  Table t;
  t.scalar = true;
  t.columns = {"r", "moment", "moment_tail_bound", "factorial_moment", "factorial_tail_bound",
               "terms"};
  t.add({static_cast<std::int64_t>(o.r), m.value, m.tail_bound, f.value, f.tail_bound,
         std::max(m.terms, f.terms)});
  return t;
}

Table cmd_pgf(const Dgld& d, const Options& o) {
  if (o.ss.empty() && o.ts.empty()) throw UsageError("pgf needs --s (pgf) and/or --t (mgf)");
  Table t;
  t.columns = {"function", "argument", "value", "tail_bound"};
  for (const double s : o.ss) {
    const auto v = d.pgf(s, tail_tol(o));
    t.add({std::string("pgf"), s, v.value, v.tail_bound});
  }
  for (const double x : o.ts) {
    const auto v = d.mgf(x, tail_tol(o));
    t.add({std::string("mgf"), x, v.value, v.tail_bound});
  }
  return t;
}

Table cmd_entropy(const Dgld& d, const Options& o) {
  const auto e = d.cre_entropy(tail_tol(o));
  Table t;
  t.scalar = true;
  t.columns = {"cre", "tail_bound", "terms"};
  t.add({e.value, e.tail_bound, e.terms});
  return t;
}

Table cmd_orderstats(const Dgld& d, const Options& o) {
  const OrderSpec spec{o.n, o.rank};
  spec.validate();
  std::vector<std::int64_t> xs = o.xs;
  if (xs.empty()) {
    for (std::int64_t x = 0; x <= tabulation_limit(d, o); ++x) xs.push_back(x);
  }
  Table t;
  t.columns = {"x", "pmf"};
  for (const std::int64_t x : xs) t.add({x, order_stat_pmf(d, spec, x)});
  return t;
}

Table cmd_minmax(const std::vector<Params>& ps, const Options& o) {
  if (!o.max_x || *o.max_x < 0) throw UsageError("minmax needs --max-x >= 0");
  std::vector<Params> comps = ps;
  if (comps.size() == 1 && o.n > 1) comps.assign(static_cast<std::size_t>(o.n), ps.front());
  const HeteroParams h(comps);
  Table t;
  t.columns = {"x", "min_pmf", "max_pmf"};
  for (std::int64_t x = 0; x <= *o.max_x; ++x) t.add({x, min_pmf(h, x), max_pmf(h, x)});
  return t;
}

Table cmd_range0(const Dgld& d, const Options& o) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  const auto v = range_zero_prob(d, o.n, tail_tol(o));
  Table t;
  t.scalar = true;
  t.columns = {"n", "probability", "tail_bound"};
  t.add({o.n, v.value, v.tail_bound});
  return t;
}

Table cmd_compare(const std::vector<Params>& ps, const Options& o) {
  if (ps.size() != 2) throw UsageError("compare needs exactly two distributions (--dist twice)");
  const Dgld d1(ps[0]);
  const Dgld d2(ps[1]);
  const auto rep = stochastic_compare(d1, d2, o.horizon, o.tol.value_or(kDefaultDominanceTol));
  Table t;
  t.scalar = true;
  t.columns = {"direction", "horizon", "max_gap", "gap_location"};
  std::vector<Cell> row{std::string(to_string(rep.direction)), rep.horizon, rep.max_gap,
                        rep.gap_location};
  if (d1.moment_exists(1) && d2.moment_exists(1)) {
    const auto e = expectation_compare(d1, d2);
    for (const char* col : {"mean_order", "mean1", "mean1_bound", "mean2", "mean2_bound"}) {
      t.columns.emplace_back(col);
    }
    row.insert(row.end(), {std::string(to_string(e.order)), e.mean1.value, e.mean1.tail_bound,
                           e.mean2.value, e.mean2.tail_bound});
  }
  t.add(std::move(row));
  return t;
}

Table cmd_fit(const Options& o, std::vector<Params>& shown) {
  if (o.data_path.empty()) throw UsageError("fit needs --data PATH");
  if (o.starts < 1) throw UsageError("--starts must be >= 1");
  std::ifstream in(o.data_path);
  if (!in) throw IoError("cannot open data file '" + o.data_path + "'");
  const CountSample data = read_counts(in);
  const FitResult fit = fit_mle(data, o.starts, o.seed);
  shown = {fit.params};
  Table t;
  t.scalar = true;
  t.columns = {"c",         "alpha",     "theta", "log_likelihood", "aic", "converged",
               "iterations", "n_starts", "n",     "distinct"};
  t.add({fit.params.c, fit.params.alpha, fit.params.theta, fit.log_likelihood, fit.aic(),
         fit.converged, static_cast<std::int64_t>(fit.iterations),
         static_cast<std::int64_t>(fit.n_starts), data.size(),
         static_cast<std::int64_t>(data.distinct())});
  return t;
}

void add_common(CLI::App* sub, Options& o, bool with_seed) {
  sub->add_option("--c", o.c, "tail shape c > 0");
  sub->add_option("--alpha", o.alpha, "gamma shape alpha > 0");
  sub->add_option("--theta", o.theta, "scale theta > 0");
  sub->add_option("--dist", o.dists, "distribution as c,alpha,theta (repeatable)");
  if (with_seed) sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--tol", o.tol, "tail tolerance (dominance tolerance for compare)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out_path, "write output to PATH instead of stdout");
}

Table dispatch(const std::string& name, const Options& o, std::vector<Params>& shown) {
  if (name == "fit") return cmd_fit(o, shown);
  shown = collect_params(o);
  if (name == "compare") return cmd_compare(shown, o);
  if (name == "minmax") {
    if (shown.empty()) throw UsageError("minmax needs at least one distribution");
    return cmd_minmax(shown, o);
  }
  const Dgld d(single_params(o));
  if (name == "pmf" || name == "cdf" || name == "hazard") return cmd_point(d, o, name);
  if (name == "tabulate") return cmd_tabulate(d, o);
  if (name == "mode") return cmd_mode(d);
  if (name == "quantile") return cmd_quantile(d, o);
  if (name == "sample") return cmd_sample(d, o);
  if (name == "moments") return cmd_moments(d, o);
  if (name == "pgf") return cmd_pgf(d, o);
  if (name == "entropy") return cmd_entropy(d, o);
  if (name == "orderstats") return cmd_orderstats(d, o);
  if (name == "range0") return cmd_range0(d, o);
  throw UsageError("unknown subcommand " + name);
}

}  // namespace

CountSample read_counts(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool table_mode = false;
  bool first_content = true;
  std::vector<std::int64_t> values;
  std::map<std::int64_t, std::int64_t> table;
  const auto fail = [&](const std::string& why) {
    throw ParseError("line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (first_content) {
      first_content = false;
      std::string header = t;
      header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
      if (header == "value,count") {
        table_mode = true;
        continue;
      }
    }
    if (table_mode) {
      const auto comma = t.find(',');
      if (comma == std::string::npos) fail("expected 'value,count'");
      const auto v = parse_int(trim(std::string_view(t).substr(0, comma)));
      const auto k = parse_int(trim(std::string_view(t).substr(comma + 1)));
      if (!v || !k) fail("expected two integers 'value,count', got '" + t + "'");
      if (*v < 0) fail("value must be a non-negative integer");
      if (*k < 1) fail("count must be >= 1");
      table[*v] += *k;
    } else {
      const auto v = parse_int(t);
      if (!v) fail("expected a non-negative integer, got '" + t + "'");
      if (*v < 0) fail("value must be a non-negative integer");
      values.push_back(*v);
    }
  }
  if (table_mode) {
    if (table.empty()) throw ParseError("data file contains a header but no rows");
    return CountSample::from_table(table);
  }
  if (values.empty()) throw ParseError("data file contains no observations");
  return CountSample::from_values(values);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete gamma-Lomax distribution toolkit", "dgl"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Options o;
  struct Spec {
    const char* name;
    const char* help;
    bool seed;
  };
  const Spec specs[] = {
      {"pmf", "probability mass at --x", false},
      {"cdf", "cumulative probability at --x", false},
      {"hazard", "discrete hazard P(X=x)/P(X>=x) at --x", false},
      {"tabulate", "x, pmf, cdf, survival, hazard up to --max-x or the 0.9999 quantile", false},
      {"mode", "most probable value", false},
      {"quantile", "smallest x with cdf(x) >= q for each --q", false},
      {"sample", "--n exact draws", true},
      {"moments", "raw and factorial moment of order --r", false},
      {"pgf", "probability generating function at --s, moment generating function at --t",
       false},
      {"entropy", "cumulative residual entropy", false},
      {"orderstats", "pmf of the --i-th order statistic of --n draws", false},
      {"minmax", "pmf of the minimum and maximum of independent draws", false},
      {"range0", "probability that --n draws are all equal", false},
      {"compare", "survival dominance and mean ordering of two --dist", false},
      {"fit", "maximum likelihood fit to the counts in --data", true},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o, s.seed);
    const std::string name = s.name;
    if (name == "cdf") {
      sub->add_option("--x", o.real_xs, "points (comma-separated or repeated)")->delimiter(',');
    } else if (name == "pmf" || name == "hazard" || name == "orderstats") {
      sub->add_option("--x", o.xs, "points (comma-separated or repeated)")->delimiter(',');
    }
    if (name == "tabulate" || name == "orderstats" || name == "minmax") {
      sub->add_option("--max-x", o.max_x, "last x to tabulate");
    }
    if (name == "quantile") sub->add_option("--q", o.qs, "probabilities")->delimiter(',');
    if (name == "sample" || name == "range0") sub->add_option("--n", o.n, "count")->required();
    if (name == "orderstats") {
      sub->add_option("--n", o.n, "sample size")->required();
      sub->add_option("--i", o.rank, "rank, 1..n")->required();
    }
    if (name == "minmax") sub->add_option("--n", o.n, "iid copies when one distribution is given");
    if (name == "moments") sub->add_option("--r", o.r, "order r >= 1");
    if (name == "pgf") {
      sub->add_option("--s", o.ss, "pgf arguments, |s| <= 1")->delimiter(',');
      sub->add_option("--t", o.ts, "mgf arguments, t <= 0")->delimiter(',');
    }
    if (name == "compare") sub->add_option("--horizon", o.horizon, "last x compared");
    if (name == "fit") {
      sub->add_option("--data", o.data_path, "integers one per line, or CSV 'value,count'");
      sub->add_option("--starts", o.starts, "number of optimizer starts");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    std::vector<Params> shown;
    const Table table = dispatch(name, o, shown);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
      file.open(o.out_path, std::ios::binary);
      if (!file) throw IoError("cannot open output file '" + o.out_path + "'");
      sink = &file;
    }
    if (o.format == "json") {
      write_json(*sink, name, shown, table);
    } else {
      write_csv(*sink, table);
    }
    sink->flush();
    if (!*sink) throw IoError("failed writing output");
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.get_subcommand(name)->help();
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMathError;
  }
}

}  // namespace dgl::cli
