#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gseries/approx.hpp"
#include "gseries/errors.hpp"
#include "gseries/expansion.hpp"
#include "gseries/family.hpp"
#include "gseries/function_spec.hpp"

namespace gseries::cli {

namespace {

struct RunConfig {
  std::string command;
  std::vector<std::string> positional;
  std::string expansion;
  std::string alpha, beta, w, a1, a2;
  std::string function;
  std::string derivs;
  std::string families;
  double x0 = 0.0;
  std::optional<int> terms;
  std::optional<double> at;
  std::string grid;
  std::string out;
  std::string format = "csv";
  std::string n_list = "3,7,10,20";
};

// One output table; rendered as CSV or as a JSON array of row objects.
using Cell = std::variant<std::string, double, long>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (auto s = std::get_if<std::string>(&c)) return *s;
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<long>(c));
}

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Cell& c = row[i];
        if (auto d = std::get_if<double>(&c)) {
          obj[t.header[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
        } else if (auto l = std::get_if<long>(&c)) {
          obj[t.header[i]] = *l;
        } else {
          obj[t.header[i]] = std::get<std::string>(c);
        }
      }
      rows.push_back(std::move(obj));
    }
    os << rows.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

void check_written(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw IoError("error writing " + path.string());
}

// Writes through --out when given, else to the command's stream.
template <typename Fn>
void emit(const RunConfig& cfg, std::ostream& out, Fn&& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream f = open_output(cfg.out);
  body(f);
  check_written(f, cfg.out);
}

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument(std::string("invalid ") + what + " '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const char* what) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument(std::string("invalid ") + what + " '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Evenly spaced points; values within rounding of 0 are snapped to 0 so
// that grids crossing the origin contain it exactly.
std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw InvalidArgument("grid count must be at least 1");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  if (count == 1) return {start};
  const double span = stop - start;
  for (int i = 0; i < count; ++i) {
    double x = start + span * i / (count - 1);
    if (std::abs(x) <= 1e-12 * std::abs(span)) x = 0.0;
    xs.push_back(x);
  }
  return xs;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() != 3) throw InvalidArgument("grid must be start:stop:count, got '" + spec + "'");
  return linspace(parse_double(parts[0], "grid start"), parse_double(parts[1], "grid stop"),
                  parse_int(parts[2], "grid count"));
}

std::vector<double> points(const RunConfig& cfg) {
  if (cfg.at && !cfg.grid.empty()) throw InvalidArgument("use either --at or --grid");
  if (cfg.at) return {*cfg.at};
  if (!cfg.grid.empty()) return parse_grid(cfg.grid);
  throw InvalidArgument(cfg.command + " needs --at or --grid");
}

// Positional arguments [expansion] [function] [terms] fill unset flags.
void apply_positionals(RunConfig& cfg, bool with_expansion) {
  std::size_t i = 0;
  const auto& pos = cfg.positional;
  if (with_expansion && i < pos.size() && cfg.expansion.empty()) cfg.expansion = pos[i++];
  if (i < pos.size() && cfg.function.empty() && cfg.derivs.empty()) cfg.function = pos[i++];
  if (i < pos.size() && !cfg.terms) cfg.terms = parse_int(pos[i++], "number of terms");
  if (i < pos.size()) throw InvalidArgument("unexpected argument '" + pos[i] + "'");
}

Params params_from(const RunConfig& cfg) {
  Params p;
  if (!cfg.alpha.empty()) p.alpha = Scalar::parse(cfg.alpha);
  if (!cfg.beta.empty()) p.beta = Scalar::parse(cfg.beta);
  if (!cfg.w.empty()) p.w = Scalar::parse(cfg.w);
  if (!cfg.a1.empty()) p.a1 = Scalar::parse(cfg.a1);
  if (!cfg.a2.empty()) p.a2 = Scalar::parse(cfg.a2);
  return p;
}

Expansion expansion_named(const std::string& id, const Params& params) {
  if (id == "tp" || id == "TP") return Expansion::taylor();
  auto family = parse_family(id);
  if (!family) throw InvalidArgument("unknown expansion '" + id + "'");
  return Expansion::make(*family, params);
}

Expansion make_expansion(const RunConfig& cfg) {
  if (cfg.expansion.empty()) throw InvalidArgument(cfg.command + " needs an expansion (a1..a13, c1..c6, tp)");
  return expansion_named(cfg.expansion, params_from(cfg));
}

FunctionSpec make_function(const RunConfig& cfg) {
  if (!cfg.derivs.empty()) {
    if (!cfg.function.empty()) throw InvalidArgument("use either --function or --derivs");
    return FunctionSpec::from_file(cfg.derivs, cfg.x0);
  }
  if (cfg.function.empty()) throw InvalidArgument(cfg.command + " needs --function or --derivs");
  return FunctionSpec::parse(cfg.function, cfg.x0);
}

int terms_of(const RunConfig& cfg, int fallback) {
  int n = cfg.terms.value_or(fallback);
  if (n < 1) throw InvalidArgument("--terms must be at least 1");
  return n;
}

std::string expansion_label(const Expansion& e) {
  return e.family() == Family::A5 && e.params().alpha && *e.params().alpha == Scalar(1) ? "tp"
                                                                                          : std::string(e.id());
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const double x = cfg.at.value_or(0.5);
  const double truth = std::log1p(x);
  const Expansion a8 = Expansion::make(Family::A8);
  const FunctionSpec f = FunctionSpec::ln1p();
  Table t{{"N", "delta_a8", "delta_tp"}, {}};
  for (const std::string& item : split(cfg.n_list, ',')) {
    int n = parse_int(item, "--n-list entry");
    double d_a8 = std::abs(assemble(a8, f, n).evaluate(x) - truth);
    double d_tp = std::abs(taylor_baseline(f, n).evaluate(x) - truth);
    t.rows.push_back({static_cast<long>(n), d_a8, d_tp});
  }
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

struct FigureGrid {
  FunctionSpec f;
  std::vector<double> xs;
};

Table figure_table(const ApproximationModel& m, std::span<const double> xs, long& clipped) {
  Table t{{"x", "approx", "exact", "status"}, {}};
  for (const ErrorReport& r : error_report(m, xs)) {
    if (r.error) ++clipped;
    t.rows.push_back({r.x, r.approx, r.error ? std::nan("") : r.exact, std::string(r.error ? "domain" : "ok")});
  }
  return t;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  const int n = terms_of(cfg, 8);

  const std::vector<FigureGrid> grids = {
      {FunctionSpec::exp(), linspace(-2.0, 2.0, 201)},
      {FunctionSpec::sin(), linspace(-3.0, 3.0, 201)},
      {FunctionSpec::square(), linspace(-2.0, 2.0, 201)},
      {FunctionSpec::ln1p(), linspace(-0.75, 3.0, 151)},
  };
  std::vector<Expansion> expansions;
  for (Family fam : kAllFamilies) {
    if (has_explicit_g(fam)) expansions.push_back(Expansion::make(fam));
  }
  expansions.push_back(Expansion::taylor());

  Table index{{"file", "function", "expansion", "N", "points", "clipped"}, {}};
  auto write_one = [&](const std::string& stem, const ApproximationModel& m, std::span<const double> xs) {
    long clipped = 0;
    Table t = figure_table(m, xs, clipped);
    const std::filesystem::path path = dir / (stem + ".csv");
    std::ofstream f = open_output(path);
    write_table(t, "csv", f);
    check_written(f, path);
    index.rows.push_back({path.filename().string(), m.function().name(), expansion_label(m.expansion()),
                          static_cast<long>(m.terms()), static_cast<long>(xs.size()), clipped});
  };

  for (const FigureGrid& g : grids) {
    for (const Expansion& e : expansions) {
      write_one(g.f.name() + "_" + expansion_label(e), assemble(e, g.f, n), g.xs);
    }
  }
  const FunctionSpec fifth = FunctionSpec::pow(Scalar::ratio(1, 5));
  const std::vector<double> fifth_xs = linspace(-1.0, 6.0, 141);
  Params two;
  two.alpha = Scalar(2);
  write_one("fifth_root_a5", assemble(Expansion::make(Family::A5, two), fifth, n), fifth_xs);
  write_one("fifth_root_tp", taylor_baseline(fifth, n), fifth_xs);

  write_table(index, "csv", out);
  return kOk;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
  const ApproximationModel m = assemble(make_expansion(cfg), make_function(cfg), terms_of(cfg, 8));
  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == "json") {
      os << m.to_json() << '\n';
      return;
    }
    Table t{{"n", "exact", "decimal"}, {}};
    const auto& a = m.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) {
      t.rows.push_back({static_cast<long>(i), a[i].is_exact() ? a[i].to_string() : std::string("~"), a[i].decimal()});
    }
    write_table(t, "csv", os);
  });
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ApproximationModel m = assemble(make_expansion(cfg), make_function(cfg), terms_of(cfg, 8));
  const std::vector<double> xs = points(cfg);
  const FunctionSpec& f = m.function();
  auto exact = [&f](double x) { return f.has_exact() ? f.exact(x) : std::nan(""); };
  Table t{{"x", "approx", "exact", "delta", "status"}, {}};
  int code = kOk;
  for (const ErrorReport& r : error_report(m, exact, xs)) {
    if (r.error) {
      err << "x = " << format_double(r.x) << ": " << *r.error << '\n';
      code = kDomain;
    }
    t.rows.push_back({r.x, r.approx, r.exact, r.delta, std::string(r.error ? "domain" : "ok")});
  }
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return code;
}

int cmd_radius(const RunConfig& cfg, std::ostream& out) {
  const ApproximationModel m = assemble(make_expansion(cfg), make_function(cfg), terms_of(cfg, 24));
  const double r = estimate_radius(m);
  Interval u = map_domain(m.expansion(), r);
  u.lo += m.function().x0();
  u.hi += m.function().x0();
  Table t{{"expansion", "f", "N", "R", "u_lo", "u_hi", "u_lo_closed", "u_hi_closed"}, {}};
  t.rows.push_back({expansion_label(m.expansion()), m.function().name(), static_cast<long>(m.terms()), r, u.lo, u.hi,
                    static_cast<long>(u.lo_closed), static_cast<long>(u.hi_closed)});
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const FunctionSpec f = make_function(cfg);
  const int n = terms_of(cfg, 8);
  const Params params = params_from(cfg);
  std::vector<std::string> ids;
  if (cfg.families.empty()) {
    for (Family fam : kAllFamilies) {
      if (has_explicit_g(fam)) ids.emplace_back(family_id(fam));
    }
    ids.emplace_back("tp");
  } else {
    ids = split(cfg.families, ',');
  }
  std::vector<ApproximationModel> models;
  for (const std::string& id : ids) models.push_back(assemble(expansion_named(id, params), f, n));

  const std::vector<double> xs = points(cfg);
  Table t{{"x", "exact"}, {}};
  for (const auto& m : models) t.header.push_back(expansion_label(m.expansion()));
  for (double x : xs) {
    std::vector<Cell> row{x, f.has_exact() ? f.exact(x) : std::nan("")};
    for (const auto& m : models) {
      try {
        row.emplace_back(m.evaluate(x));
      } catch (const DomainError&) {
        row.emplace_back(std::nan(""));
      } catch (const ConvergenceError&) {
        row.emplace_back(std::nan(""));
      }
    }
    t.rows.push_back(std::move(row));
  }
  emit(cfg, out, [&](std::ostream& os) { write_table(t, cfg.format, os); });
  return kOk;
}

void add_model_options(CLI::App* sub, RunConfig& cfg, bool with_expansion) {
  if (with_expansion) {
    sub->add_option("--expansion,-e", cfg.expansion, "Expansion family: a1..a13, c1..c6, tp");
  }
  sub->add_option("--alpha", cfg.alpha, "Family parameter alpha (rational or decimal)");
  sub->add_option("--beta", cfg.beta, "Family parameter beta");
  sub->add_option("--w", cfg.w, "Family parameter w");
  sub->add_option("--a1", cfg.a1, "Parameter a1 of c5");
  sub->add_option("--a2", cfg.a2, "Parameter a2 of c5");
  sub->add_option("--function,-f", cfg.function, "exp, sin, square, ln1p or pow:<alpha>");
  sub->add_option("--derivs", cfg.derivs, "File with d_0, d_1, ... of f, one rational per line");
  sub->add_option("--x0", cfg.x0, "Expansion point");
  sub->add_option("--terms,-n", cfg.terms, "Highest power N");
  sub->add_option("args", cfg.positional, with_expansion ? "[expansion] [function] [terms]" : "[function] [terms]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Derivative-matching approximations as power series in a chosen function g"};
  app.name("gseries");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto* table = app.add_subcommand("table", "Error table for ln(1+x): A8 against the Taylor polynomial");
  table->add_option("--n-list", cfg.n_list, "Comma-separated values of N")->capture_default_str();
  table->add_option("--at", cfg.at, "Evaluation point (default 0.5)");

  auto* figures = app.add_subcommand("figures", "Write the grid CSV files for every family and built-in");
  figures->add_option("--terms,-n", cfg.terms, "Highest power N (default 8)");

  auto* coeffs = app.add_subcommand("coeffs", "List a_0..a_N");
  add_model_options(coeffs, cfg, true);

  auto* eval = app.add_subcommand("eval", "Evaluate the approximation at points");
  add_model_options(eval, cfg, true);

  auto* radius = app.add_subcommand("radius", "Estimate the radius R and the x-interval where |g(x)| < R");
  add_model_options(radius, cfg, true);

  auto* compare = app.add_subcommand("compare", "Evaluate several families side by side");
  add_model_options(compare, cfg, false);
  compare->add_option("--families", cfg.families, "Comma-separated family ids (default a1..a13,tp)");

  for (auto* sub : {table, figures, coeffs, eval, radius, compare}) {
    sub->add_option("--out,-o", cfg.out, sub == figures ? "Output directory (default ./figures)" : "Output file");
    if (sub != figures) {
      sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
  }
  for (auto* sub : {eval, compare}) {
    sub->add_option("--at", cfg.at, "Single evaluation point");
    sub->add_option("--grid", cfg.grid, "start:stop:count");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (table->parsed()) {
      cfg.command = "table";
      return cmd_table(cfg, out);
    }
    if (figures->parsed()) {
      cfg.command = "figures";
      return cmd_figures(cfg, out);
    }
    if (coeffs->parsed()) {
      cfg.command = "coeffs";
      apply_positionals(cfg, true);
      return cmd_coeffs(cfg, out);
    }
    if (eval->parsed()) {
      cfg.command = "eval";
      apply_positionals(cfg, true);
      return cmd_eval(cfg, out, err);
    }
    if (radius->parsed()) {
      cfg.command = "radius";
      apply_positionals(cfg, true);
      return cmd_radius(cfg, out);
    }
    cfg.command = "compare";
    apply_positionals(cfg, false);
    return cmd_compare(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kDomain;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace gseries::cli
