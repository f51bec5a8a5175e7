#include "gramdisc/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gramdisc/gramdisc.hpp"

namespace gramdisc::cli {
namespace {

using nlohmann::ordered_json;

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
  Format natural;
};

constexpr CommandInfo kCommands[] = {
    {Command::gram, "gram", "Gram point g_n (or a range)", Format::json},
    {Command::classify, "classify", "Gram's law classification and viscosity", Format::json},
    {Command::scan, "scan", "classification rows over a range", Format::csv},
    {Command::blocks, "blocks", "Gram blocks containing the bad points of a range", Format::json},
    {Command::repulsion, "repulsion", "repulsion check of the isolated bad points in a range", Format::json},
    {Command::discriminant, "discriminant", "Gram discriminant at a parameter vector", Format::json},
    {Command::gradient, "gradient", "closed-form gradients of Delta_n and g_n at 0", Format::csv},
    {Command::hessian, "hessian", "Hessian form or entry at 0", Format::json},
    {Command::trace, "trace", "Delta_n along a parameter curve", Format::csv},
    {Command::table, "table", "A_k / B_k term table at g_n", Format::csv},
    {Command::suggest_shift, "suggest-shift", "shifting indices with the largest B_k", Format::json},
};

const CommandInfo& info(Command command) {
  for (const auto& c : kCommands) {
    if (c.command == command) return c;
  }
  return kCommands[0];
}

// Rounds to 15 significant digits so that the JSON writer's shortest
// representation matches the CSV text.
double rounded(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return rounded(x);
}

ordered_json numbers(const std::vector<double>& xs) {
  ordered_json out = ordered_json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

const char* flag(bool b) { return b ? "1" : "0"; }

class Emitter {
 public:
  explicit Emitter(std::ostream& os) : os_(os) {}

  void header(std::initializer_list<const char*> columns) {
    bool first = true;
    for (const char* c : columns) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }

  template <class... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((emit(fields, first)), ...);
    os_ << '\n';
  }

  void json(const ordered_json& j) { os_ << j.dump(2) << '\n'; }

 private:
  void separator(bool& first) {
    if (!first) os_ << ',';
    first = false;
  }
  void emit(double x, bool& first) {
    separator(first);
    os_ << format_number(x);
  }
  void emit(long x, bool& first) {
    separator(first);
    os_ << x;
  }
  void emit(std::size_t x, bool& first) {
    separator(first);
    os_ << x;
  }
  void emit(const char* x, bool& first) {
    separator(first);
    os_ << x;
  }
  void emit(const std::string& x, bool& first) {
    separator(first);
    os_ << x;
  }

  std::ostream& os_;
};

long require_n(const RunConfig& c) {
  if (!c.n) throw MalformedSpec(std::string(to_string(c.command)) + " requires --n");
  return *c.n;
}

std::pair<long, long> require_range(const RunConfig& c) {
  if (!c.range) throw MalformedSpec(std::string(to_string(c.command)) + " requires --range LO HI");
  return *c.range;
}

ContinuationOptions continuation(const RunConfig& c) {
  ContinuationOptions opts;
  opts.theta = ThetaSeries(c.correction_order);
  return opts;
}

ordered_json class_json(const GramClassRecord& r) {
  return ordered_json{{"n", r.n},
                      {"t", number(r.t)},
                      {"z", number(r.z)},
                      {"z_prime", number(r.z_prime)},
                      {"good", r.good},
                      {"viscosity", number(r.viscosity)},
                      {"uncertain", r.uncertain}};
}

void run_gram(const RunConfig& c, Emitter& e) {
  const ThetaSeries series(c.correction_order);
  const auto json_of = [](const GramPoint& g) {
    return ordered_json{{"n", g.n}, {"t", number(g.abscissa())}, {"residual", number(g.residual)}};
  };
  if (c.range) {
    const auto [lo, hi] = *c.range;
    if (c.effective_format() == Format::csv) {
      e.header({"n", "t", "residual"});
      for (long n = lo; n <= hi; ++n) {
        const GramPoint g = gram_point(n, series);
        e.row(g.n, g.abscissa(), g.residual);
      }
      return;
    }
    ordered_json out = ordered_json::array();
    for (long n = lo; n <= hi; ++n) out.push_back(json_of(gram_point(n, series)));
    e.json(out);
    return;
  }
  const GramPoint g = gram_point(require_n(c), series);
  if (c.effective_format() == Format::csv) {
    e.header({"n", "t", "residual"});
    e.row(g.n, g.abscissa(), g.residual);
    return;
  }
  e.json(json_of(g));
}

void run_classify(const RunConfig& c, Emitter& e) {
  std::vector<GramClassRecord> records;
  if (c.range) {
    records = classify_range(c.range->first, c.range->second, c.threads);
  } else {
    records.push_back(classify(require_n(c)));
  }
  if (c.effective_format() == Format::csv) {
    e.header({"n", "t", "z", "z_prime", "good", "viscosity", "uncertain"});
    for (const auto& r : records) e.row(r.n, r.t, r.z, r.z_prime, flag(r.good), r.viscosity, flag(r.uncertain));
    return;
  }
  if (!c.range) {
    e.json(class_json(records.front()));
    return;
  }
  ordered_json out = ordered_json::array();
  for (const auto& r : records) out.push_back(class_json(r));
  e.json(out);
}

void run_scan(const RunConfig& c, Emitter& e) {
  const auto [lo, hi] = require_range(c);
  const std::vector<ScanRow> rows = scan(lo, hi, c.threads);
  if (c.effective_format() == Format::csv) {
    e.header({"n", "t", "z", "z_prime", "good", "viscosity", "isolated", "corrupt", "uncertain"});
    for (const auto& row : rows) {
      const auto& r = row.record;
      e.row(r.n, r.t, r.z, r.z_prime, flag(r.good), r.viscosity, flag(row.isolated), flag(row.corrupt),
            flag(r.uncertain));
    }
    return;
  }
  ordered_json out = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json j = class_json(row.record);
    j["isolated"] = row.isolated;
    j["corrupt"] = row.corrupt;
    out.push_back(std::move(j));
  }
  e.json(out);
}

void run_blocks(const RunConfig& c, Emitter& e) {
  const auto [lo, hi] = require_range(c);
  const std::vector<GramBlock> found = blocks(lo, hi, c.search_limit, c.threads);
  if (c.effective_format() == Format::csv) {
    e.header({"start_n", "length", "members"});
    for (const auto& b : found) {
      std::string members;
      for (long m : b.members()) members += (members.empty() ? "" : " ") + std::to_string(m);
      e.row(b.start_n, b.length, members);
    }
    return;
  }
  ordered_json out = ordered_json::array();
  for (const auto& b : found) out.push_back({{"start_n", b.start_n}, {"length", b.length}, {"members", b.members()}});
  e.json(out);
}

void run_repulsion(const RunConfig& c, Emitter& e) {
  const auto [lo, hi] = require_range(c);
  const RepulsionReport report = repulsion_scan(lo, hi, c.threads);
  if (c.effective_format() == Format::csv) {
    e.header({"n", "t", "z", "z_prime", "viscosity", "isolated", "satisfies_bound", "corrupt", "uncertain"});
    for (const auto& r : report.rows) {
      e.row(r.n, r.t, r.z, r.z_prime, r.viscosity, flag(r.isolated), flag(r.satisfies_bound), flag(r.corrupt),
            flag(r.uncertain));
    }
    return;
  }
  e.json(ordered_json{{"range", {lo, hi}},
                      {"bad_count", report.bad_count},
                      {"isolated_count", report.isolated_count},
                      {"violations", report.violations},
                      {"corrupt", report.corrupt}});
}

void run_discriminant(const RunConfig& c, Emitter& e) {
  const GramDiscriminant disc(require_n(c), continuation(c));
  const ParameterVector a = parse_parameter_spec(c.at, disc.dimension());
  const DiscriminantRecord r = disc.evaluate(a);
  if (c.effective_format() == Format::csv) {
    e.header({"n", "a_spec", "t", "delta", "signed", "steps", "converged"});
    e.row(r.n, a.describe(), r.point.t, r.delta, r.signed_delta, static_cast<long>(r.point.steps),
          flag(r.point.converged));
    return;
  }
  e.json(ordered_json{{"n", r.n},
                      {"a_spec", a.describe()},
                      {"t", number(r.point.t)},
                      {"delta", number(r.delta)},
                      {"signed", number(r.signed_delta)},
                      {"steps", r.point.steps},
                      {"converged", r.point.converged}});
}

void run_gradient(const RunConfig& c, Emitter& e) {
  const GramDiscriminant disc(require_n(c), continuation(c));
  std::vector<double> grad = disc.gradient();
  std::vector<double> ggrad = disc.gram_point_gradient();
  const std::size_t k_max = std::min(c.k_max.value_or(grad.size()), grad.size());
  grad.resize(k_max);
  ggrad.resize(k_max);
  if (c.effective_format() == Format::csv) {
    e.header({"k", "gradient", "gram_point_gradient"});
    for (std::size_t k = 1; k <= k_max; ++k) e.row(k, grad[k - 1], ggrad[k - 1]);
    return;
  }
  e.json(ordered_json{{"n", disc.index()}, {"gradient", numbers(grad)}, {"gram_point_gradient", numbers(ggrad)}});
}

void run_hessian(const RunConfig& c, Emitter& e) {
  const GramDiscriminant disc(require_n(c), continuation(c));
  if (c.k1 || c.k2) {
    if (!c.k1 || !c.k2) throw MalformedSpec("hessian entries need both --k1 and --k2");
    const double h = disc.hessian_entry(*c.k1, *c.k2);
    if (c.effective_format() == Format::csv) {
      e.header({"n", "k1", "k2", "hessian_entry"});
      e.row(disc.index(), *c.k1, *c.k2, h);
      return;
    }
    e.json(ordered_json{{"n", disc.index()}, {"k1", *c.k1}, {"k2", *c.k2}, {"hessian_entry", number(h)}});
    return;
  }
  const ParameterVector a = parse_parameter_spec(c.at, disc.dimension());
  const double form = disc.hessian_form(a);
  const double model = disc.second_order_approx(a);
  const double zp = disc.z_prime_via_gradient(a);
  if (c.effective_format() == Format::csv) {
    e.header({"n", "a_spec", "hessian_form", "second_order_approx", "z_prime"});
    e.row(disc.index(), a.describe(), form, model, zp);
    return;
  }
  e.json(ordered_json{{"n", disc.index()},
                      {"a_spec", a.describe()},
                      {"hessian_form", number(form)},
                      {"second_order_approx", number(model)},
                      {"z_prime", number(zp)}});
}

CurveSpec curve_from(const RunConfig& c, std::size_t terms) {
  if (c.curve == "linear") return CurveSpec::linear(c.grid);
  if (c.curve == "split") {
    if (c.shift.empty()) throw MalformedSpec("split curve requires --shift");
    const std::string text = c.waypoints.empty() ? "0,0;1,1" : c.waypoints;
    return CurveSpec::split({c.shift.begin(), c.shift.end()}, parse_waypoints(text), c.grid);
  }
  if (c.curve == "piecewise") {
    if (c.waypoints.empty()) throw MalformedSpec("piecewise curve requires --waypoints");
    std::vector<ParameterVector> points;
    std::stringstream ss(c.waypoints);
    std::string item;
    while (std::getline(ss, item, ';')) points.push_back(parse_parameter_spec(item, terms));
    return CurveSpec::piecewise(std::move(points), c.grid);
  }
  throw MalformedSpec("unknown curve kind", "curve=" + c.curve);
}

void run_trace(const RunConfig& c, Emitter& e, std::ostream& log) {
  const GramDiscriminant disc(require_n(c), continuation(c));
  const CurveSpec spec = curve_from(c, disc.dimension());
  log << "trace: n=" << disc.index() << " N=" << disc.dimension() << " samples="
      << spec.segments() * static_cast<std::size_t>(spec.grid) + 1 << '\n';
  const CurveTrace trace = trace_discriminant(disc, spec);

  ordered_json violations = ordered_json::array();
  for (const auto& iv : sign_violations(trace)) {
    violations.push_back({number(iv.s_begin), number(iv.s_end)});
  }
  ordered_json meta{{"n", trace.n},
                    {"spec", spec.describe()},
                    {"min_signed", number(trace.min_signed)},
                    {"violations", violations}};
  if (trace.failed_at) {
    meta["failed_at"] = number(*trace.failed_at);
    meta["failure"] = {{"code", std::string(to_string(*trace.failure_code))}, {"message", trace.failure}};
    log << "trace: continuation stopped at s=" << format_number(*trace.failed_at) << ": " << trace.failure << '\n';
  }
  if (!c.meta.empty()) {
    std::ofstream meta_file(c.meta);
    if (!meta_file) throw DomainError("cannot open metadata file", "path=" + c.meta);
    meta_file << meta.dump(2) << '\n';
  }

  if (c.effective_format() == Format::csv) {
    e.header({"s", "r1", "r2", "t", "delta", "signed"});
    for (const auto& s : trace.samples) e.row(s.s, s.r1, s.r2, s.t, s.delta, s.signed_delta);
    return;
  }
  ordered_json samples = ordered_json::array();
  for (const auto& s : trace.samples) {
    samples.push_back({{"s", number(s.s)},
                       {"r1", number(s.r1)},
                       {"r2", number(s.r2)},
                       {"t", number(s.t)},
                       {"delta", number(s.delta)},
                       {"signed", number(s.signed_delta)}});
  }
  meta["samples"] = std::move(samples);
  e.json(meta);
}

void run_table(const RunConfig& c, Emitter& e) {
  const long n = require_n(c);
  const std::size_t k_max = c.k_max.value_or(default_shift_horizon(n));
  const std::vector<TermRow> rows = term_table(n, k_max);
  if (c.effective_format() == Format::csv) {
    e.header({"k", "cos", "sin", "A", "B"});
    for (const auto& r : rows) e.row(r.k, r.cos_val, r.sin_val, r.a, r.b);
    return;
  }
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k}, {"cos", number(r.cos_val)}, {"sin", number(r.sin_val)}, {"A", number(r.a)},
                   {"B", number(r.b)}});
  }
  e.json(out);
}

void run_suggest_shift(const RunConfig& c, Emitter& e) {
  const long n = require_n(c);
  const std::size_t k_max = c.k_max.value_or(default_shift_horizon(n));
  const std::set<std::size_t> indices = suggest_shift_indices(n, k_max, c.count);
  if (c.effective_format() == Format::csv) {
    e.header({"k"});
    for (std::size_t k : indices) e.row(k);
    return;
  }
  e.json(ordered_json{{"n", n}, {"k_max", k_max}, {"count", c.count}, {"indices", indices}});
}

void dispatch(const RunConfig& c, std::ostream& os, std::ostream& log) {
  Emitter e(os);
  switch (c.command) {
    case Command::gram: return run_gram(c, e);
    case Command::classify: return run_classify(c, e);
    case Command::scan: return run_scan(c, e);
    case Command::blocks: return run_blocks(c, e);
    case Command::repulsion: return run_repulsion(c, e);
    case Command::discriminant: return run_discriminant(c, e);
    case Command::gradient: return run_gradient(c, e);
    case Command::hessian: return run_hessian(c, e);
    case Command::trace: return run_trace(c, e, log);
    case Command::table: return run_table(c, e);
    case Command::suggest_shift: return run_suggest_shift(c, e);
  }
}

void write_error(std::ostream& os, std::string_view code, const std::string& message, const std::string& context) {
  os << ordered_json{{"code", code}, {"message", message}, {"context", context}}.dump(2) << '\n';
}

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(x)) {
    throw MalformedSpec("malformed number in " + what, "value=" + text);
  }
  return x;
}

std::size_t parse_index(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const unsigned long long k = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || k == 0) {
    throw MalformedSpec("malformed index in " + what, "value=" + text);
  }
  return static_cast<std::size_t>(k);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::string_view to_string(Command command) noexcept { return info(command).name; }

Format RunConfig::effective_format() const { return format.value_or(info(command).natural); }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

ParameterVector parse_parameter_spec(const std::string& spec, std::size_t size) {
  if (spec == "ones") return ParameterVector::constant(size, 1.0);
  if (spec == "zeros") return ParameterVector::zeros(size);
  if (spec.rfind("r=", 0) == 0) return ParameterVector::constant(size, parse_double(spec.substr(2), spec));
  if (spec.rfind("unit:", 0) == 0) {
    const std::string body = spec.substr(5);
    const auto eq = body.find('=');
    const std::size_t k = parse_index(body.substr(0, eq), spec);
    const double v = eq == std::string::npos ? 1.0 : parse_double(body.substr(eq + 1), spec);
    return ParameterVector::unit(size, k, v);
  }
  if (spec.rfind("sparse:", 0) == 0) {
    const std::string body = spec.substr(7);
    const auto bar = body.find('|');
    const double fill = parse_double(body.substr(0, bar), spec);
    std::map<std::size_t, double> overrides;
    if (bar != std::string::npos) {
      for (const std::string& item : split(body.substr(bar + 1), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw MalformedSpec("sparse override needs k=v", "item=" + item);
        overrides[parse_index(item.substr(0, eq), spec)] = parse_double(item.substr(eq + 1), spec);
      }
    }
    return ParameterVector::sparse(size, fill, std::move(overrides));
  }
  if (spec.rfind("dense:", 0) == 0) {
    std::vector<double> values;
    for (const std::string& item : split(spec.substr(6), ',')) values.push_back(parse_double(item, spec));
    if (values.size() > size) {
      throw MalformedSpec("dense spec longer than N", "size=" + std::to_string(values.size()) + ",N=" + std::to_string(size));
    }
    values.resize(size, 0.0);
    return ParameterVector::dense(std::move(values));
  }
  throw MalformedSpec("unrecognised parameter spec", "spec=" + spec);
}

std::vector<std::pair<double, double>> parse_waypoints(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  for (const std::string& item : split(text, ';')) {
    const auto parts = split(item, ',');
    if (parts.size() != 2) throw MalformedSpec("waypoint must be r1,r2", "item=" + item);
    out.emplace_back(parse_double(parts[0], "waypoints"), parse_double(parts[1], "waypoints"));
  }
  return out;
}

std::optional<int> parse(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                         std::ostream& err) {
  CLI::App app{"Gram points, Gram discriminants and Gram's law scans for the Hardy Z-function", "gramdisc"};
  app.require_subcommand(1);

  std::string format;
  std::vector<long> range;
  std::string shift;

  for (const auto& ci : kCommands) {
    CLI::App* sub = app.add_subcommand(ci.name, ci.help);
    const Command cmd = ci.command;
    sub->callback([&config, cmd] { config.command = cmd; });

    sub->add_option("--n", config.n, "Gram index");
    const bool ranged = cmd == Command::gram || cmd == Command::classify || cmd == Command::scan ||
                        cmd == Command::blocks || cmd == Command::repulsion;
    if (ranged) {
      sub->add_option("--range", range, "inclusive index range")->expected(2);
      sub->add_option("--threads", config.threads, "worker threads (0 = all cores)");
    }
    if (cmd == Command::blocks) sub->add_option("--search-limit", config.search_limit, "outward endpoint search bound");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out, "output file (default stdout)");
    sub->add_option("--correction-order", config.correction_order, "theta series correction order 0..2")
        ->check(CLI::Range(0, 2));
    if (cmd == Command::discriminant || cmd == Command::hessian) {
      sub->add_option("--at", config.at, "parameter vector: ones|zeros|r=X|unit:K[=V]|sparse:F|k=v,..|dense:v,..");
    }
    if (cmd == Command::hessian) {
      sub->add_option("--k1", config.k1, "first index of a Hessian entry");
      sub->add_option("--k2", config.k2, "second index of a Hessian entry");
    }
    if (cmd == Command::gradient || cmd == Command::table || cmd == Command::suggest_shift) {
      sub->add_option("--k-max", config.k_max, "largest index k");
    }
    if (cmd == Command::suggest_shift) sub->add_option("--count", config.count, "number of indices");
    if (cmd == Command::trace) {
      sub->add_option("--curve", config.curve, "linear, split or piecewise")
          ->check(CLI::IsMember({"linear", "split", "piecewise"}));
      sub->add_option("--grid", config.grid, "samples per segment")->check(CLI::Range(2, 1 << 20));
      sub->add_option("--shift", shift, "shifting indices, e.g. 1,2,4,6,12");
      sub->add_option("--waypoints", config.waypoints, "split: r1,r2;... piecewise: spec;spec;...");
      sub->add_option("--meta", config.meta, "write the JSON metadata object to this file");
    }
  }

  try {
    app.parse(argc, argv);
    if (!format.empty()) config.format = format == "csv" ? Format::csv : Format::json;
    if (!range.empty()) {
      if (range[0] > range[1]) throw CLI::ValidationError("--range", "LO must not exceed HI");
      config.range = std::pair{range[0], range[1]};
    }
    if (!shift.empty()) {
      try {
        for (const std::string& item : split(shift, ',')) config.shift.push_back(parse_index(item, "--shift"));
      } catch (const MalformedSpec& e) {
        throw CLI::ValidationError("--shift", e.what());
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  return std::nullopt;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  try {
    if (config.out.empty()) {
      dispatch(config, out, log);
    } else {
      std::ostringstream buffer;
      dispatch(config, buffer, log);
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw DomainError("cannot open output file", "path=" + config.out);
      file << buffer.str();
    }
    return 0;
  } catch (const Error& e) {
    write_error(out, to_string(e.code()), e.what(), e.context());
  } catch (const std::exception& e) {
    write_error(out, "internal", e.what(), "");
  }
  return 1;
}

}  // namespace gramdisc::cli
