#include "wco/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace wco {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kCommands = {"diagnose", "invariance", "semigroup", "catalog",
                                            "expansion"};

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, _] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw SchemaError(path.empty() ? key : path + "." + key, "unknown key");
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

double num(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> nonnegative_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double v = num(j[i], path + "[" + std::to_string(i) + "]");
    if (!(v >= 0.0) || !std::isfinite(v)) throw RangeError(path + "[" + std::to_string(i) + "]", "must be a finite value >= 0");
    out.push_back(v);
  }
  return out;
}

bool scenario_exists(const std::string& ref) {
  for (const auto& s : builtin_catalog())
    if (s.name == ref) return true;
  std::error_code ec;
  return fs::is_regular_file(ref, ec);
}

CompactGrid subsample(const CompactGrid& g, std::size_t count) {
  if (g.size() <= count) return g;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(g.point(i * g.size() / count));
  return point_grid(g.domain(), pts, g.source() + " (subsample)");
}

std::string cell(const Json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return "";
}

void write_csv(const fs::path& path, const Json& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  const Json& header = table.at("header");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i].get<std::string>();
  os << '\n';
  for (const auto& row : table.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct Outputs {
  Json report;
  std::vector<std::pair<std::string, Json>> tables;  // file name -> {header, rows}
};

void emit_outputs(const RunConfig& c, const Outputs& o) {
  const bool want_json = c.output.format != "csv";
  const bool want_csv = c.output.format != "json";
  if (want_json && c.output.json_path) {
    const fs::path p(*c.output.json_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    os << o.report.dump(2) << '\n';
    fs::path meta = p;
    meta.replace_extension(".meta.json");
    std::ofstream ms(meta, std::ios::binary);
    ms << Json{{"schema_version", kSchemaVersion},
               {"generated_at", utc_timestamp()},
               {"report", p.filename().string()}}
              .dump(2)
       << '\n';
  }
  if (want_csv && c.output.csv_dir) {
    const fs::path dir(*c.output.csv_dir);
    fs::create_directories(dir);
    for (const auto& [name, table] : o.tables) write_csv(dir / name, table);
  }
}

Json config_for_report(const RunConfig& c) {
  Json j = emit_config(c);
  j.erase("output");
  return j;
}

Json grid_table(const CompactGrid& g) {
  Json header = Json::array();
  for (int i = 0; i < g.dim(); ++i) header.push_back("x_" + std::to_string(i));
  Json rows = Json::array();
  for (std::size_t k = 0; k < g.size(); ++k) {
    Json row = Json::array();
    for (int i = 0; i < g.dim(); ++i) row.push_back(g.point(k)[i]);
    rows.push_back(row);
  }
  return {{"header", header}, {"rows", rows}};
}

// C^m f on a few probe points, m = 0..depth, first test field.
Json iterate_table(const Scenario& s, int depth) {
  const CompactGrid probe = subsample(s.K, 8);
  IterateSampler sampler(s.op(), probe);
  sampler.advance_to(depth);
  Json header = {"m", "k"};
  for (int i = 0; i < probe.dim(); ++i) header.push_back("x_" + std::to_string(i));
  header.push_back("re");
  header.push_back("im");
  Json rows = Json::array();
  for (int m = 0; m <= depth; ++m)
    for (std::size_t k = 0; k < probe.size(); ++k) {
      if (sampler.left_at(k) >= 0 && m >= sampler.left_at(k)) continue;
      const Complex v = sampler.iterate_value(s.test_fields.front(), k, m);
      Json row = {m, k};
      for (int i = 0; i < probe.dim(); ++i) row.push_back(probe.point(k)[i]);
      row.push_back(json_number(v.real()));
      row.push_back(json_number(v.imag()));
      rows.push_back(row);
    }
  return {{"header", header}, {"rows", rows}};
}

void print_results(std::ostream& out, const ScenarioReport& r, int verbosity) {
  std::size_t passed = 0;
  for (const auto& e : r.results) passed += e.pass ? 1 : 0;
  out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << passed << "/" << r.results.size()
      << " expectations)\n";
  for (const auto& e : r.results) {
    if (verbosity < 1 && e.pass) continue;
    if (verbosity < 2 && e.pass && r.pass) continue;
    out << "  [" << (e.pass ? "ok" : "FAIL") << "] " << e.diagnostic << ": expected "
        << e.expected.dump() << ", observed " << e.observed.dump() << " (" << e.provenance << ")";
    if (!e.error.empty()) out << " error: " << e.error;
    out << '\n';
  }
}

Scenario restricted(Scenario s, std::initializer_list<const char*> keep) {
  std::map<std::string, Expectation> kept;
  for (const char* k : keep)
    if (auto it = s.expected.find(k); it != s.expected.end()) kept.insert(*it);
  s.expected = std::move(kept);
  return s;
}

// Commands ------------------------------------------------------------------

int cmd_catalog(const RunConfig& c, std::ostream& out, Outputs& o) {
  bool all = true;
  Json reports = Json::array();
  for (const auto& s : builtin_catalog()) {
    const ScenarioReport r = run_scenario(s, c.overrides);
    print_results(out, r, c.output.verbosity);
    all = all && r.pass;
    reports.push_back(report_json(r));
    for (const auto& [name, table] : r.csv_tables.items())
      o.tables.emplace_back(s.name + "_" + name + ".csv", table);
  }
  out << (all ? "catalog: all scenarios passed\n" : "catalog: some expectations failed\n");
  o.report["scenarios"] = reports;
  o.report["pass"] = all;
  return all ? kExitPass : kExitExpectationFailure;
}

int cmd_diagnose(const RunConfig& c, std::ostream& out, Outputs& o) {
  const Scenario s = resolve_scenario(*c.scenario_ref);
  const ScenarioReport r = run_scenario(s, c.overrides);
  print_results(out, r, std::min(c.output.verbosity + 1, 2));
  if (auto it = r.subreports.find("orbit"); it != r.subreports.end()) {
    const Json& orbit = *it;
    out << "  orbit: " << (orbit["stable"].get<bool>() ? "stable" : "unstable")
        << " up to horizon " << orbit["horizon"] << " (evidence, not proof)\n";
  }
  o.report["scenario"] = report_json(r);
  o.report["pass"] = r.pass;
  for (const auto& [name, table] : r.csv_tables.items())
    o.tables.emplace_back(s.name + "_" + name + ".csv", table);
  o.tables.emplace_back(s.name + "_K.csv", grid_table(s.K));
  o.tables.emplace_back(s.name + "_iterates.csv", iterate_table(s, std::min(c.overrides.horizon.value_or(200), 20)));
  return r.pass ? kExitPass : kExitExpectationFailure;
}

int cmd_invariance(const RunConfig& c, std::ostream& out, Outputs& o) {
  Scenario s = resolve_scenario(*c.scenario_ref);
  const auto P = s.space.kernel_operator();
  if (!P || P->name != "heat") throw SchemaError("scenario_ref", "invariance needs a heat-kernel scenario");
  double tol = 1e-6;
  if (auto it = s.expected.find("heat_invariance"); it != s.expected.end())
    tol = it->second.params.value("tol", tol);
  if (c.overrides.tolerance) {
    tol = *c.overrides.tolerance;
    for (const char* k : {"heat_invariance", "closure"})
      if (auto it = s.expected.find(k); it != s.expected.end()) it->second.params["tol"] = tol;
  }
  const InvarianceVerdict v = verify_heat_invariance(s.weight, s.symbol, s.K, tol);
  out << s.name << ": heat invariance " << (v.overall ? "accepted" : "rejected") << " (tol "
      << format_double(tol) << ")\n";
  for (const auto& [k, cond] : v.conditions)
    out << "  " << std::left << std::setw(10) << k << " residual " << format_double(cond.residual)
        << (cond.pass ? "  pass" : "  FAIL") << '\n';
  const ScenarioReport r = run_scenario(
      restricted(s, {"heat_invariance", "invariance_residuals", "closure", "closure_residual"}), c.overrides);
  print_results(out, r, c.output.verbosity);
  o.report["scenario"] = s.name;
  o.report["verdict"] = report_json(v);
  o.report["expectations"] = report_json(r);
  o.report["pass"] = r.pass;
  return r.pass ? kExitPass : kExitExpectationFailure;
}

int cmd_semigroup(const RunConfig& c, std::ostream& out, Outputs& o) {
  const Scenario s = resolve_scenario(*c.scenario_ref);
  Json params = Json::object();
  if (auto it = s.expected.find("semigroup"); it != s.expected.end()) params = it->second.params;
  const int fi = params.value("field", 0);
  if (fi < 0 || fi >= static_cast<int>(s.test_fields.size())) throw SchemaError("scenario_ref", "field index out of range");
  const ScalarField& f = s.test_fields[static_cast<std::size_t>(fi)];
  const double eps = c.overrides.tolerance.value_or(params.value("eps", 1e-9));
  const std::vector<double> ts =
      c.overrides.t_values.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : c.overrides.t_values;
  const CompactGrid probe = subsample(s.K, 8);

  Json header = {"t"};
  for (std::size_t k = 0; k < probe.size(); ++k) {
    header.push_back("re_" + std::to_string(k));
    header.push_back("im_" + std::to_string(k));
  }
  Json rows = Json::array();
  Json budgets = Json::array();
  std::optional<std::string> refusal;
  for (double t : ts) {
    try {
      const auto [Tf, budget] = exp_apply(s.op(), f, t, eps, SeminormSpec::sup(s.K),
                                          std::nullopt, c.overrides.horizon.value_or(200));
      budgets.push_back(report_json(budget));
      Json row = {t};
      for (std::size_t k = 0; k < probe.size(); ++k) {
        const Complex v = Tf(probe.point(k));
        row.push_back(json_number(v.real()));
        row.push_back(json_number(v.imag()));
      }
      rows.push_back(row);
      out << "  t=" << format_double(t) << "  N=" << budget.N << "  gamma=" << format_double(budget.gamma)
          << "  tail<=" << format_double(budget.tail_bound) << '\n';
    } catch (const NoGrowthBound& e) {
      refusal = e.what();
      break;
    }
  }
  if (refusal) out << s.name << ": series refused (" << *refusal << ")\n";
  else out << s.name << ": series certified for " << ts.size() << " times\n";

  const ScenarioReport r = run_scenario(restricted(s, {"semigroup", "semigroup_law", "generator"}), c.overrides);
  print_results(out, r, c.output.verbosity);
  o.report["scenario"] = s.name;
  o.report["field"] = f.label();
  o.report["budgets"] = budgets;
  o.report["refusal"] = refusal ? Json(*refusal) : Json(nullptr);
  o.report["expectations"] = report_json(r);
  o.report["pass"] = r.pass;
  o.tables.emplace_back(s.name + "_evolution.csv", Json{{"header", header}, {"rows", rows}});
  o.tables.emplace_back(s.name + "_probe.csv", grid_table(probe));
  return r.pass ? kExitPass : kExitExpectationFailure;
}

int cmd_expansion(const RunConfig& c, std::ostream& out, Outputs& o) {
  const MultiIndex& alpha = *c.alpha;
  const int d = static_cast<int>(alpha.size());
  const ExpansionTable merged = build_expansion(alpha, d, true);
  const ExpansionTable raw = build_expansion(alpha, d, false);
  const double M = expansion_constant(order(alpha), d);
  out << "alpha=" << to_string(alpha) << " d=" << d << ": " << merged.terms.size() << " merged terms, "
      << raw.terms.size() << " unmerged, B=" << format_double(merged.B_constant)
      << ", M_" << order(alpha) << "=" << format_double(M) << '\n';
  if (c.output.verbosity >= 1) {
    for (const auto& t : merged.terms) {
      out << "  " << t.multiplicity << " x d^" << to_string(t.beta) << " f(psi^m) *";
      for (const auto& fac : t.factors) out << " d^" << to_string(fac.gamma) << "[psi_" << fac.component << "]";
      out << '\n';
    }
  }
  o.report["table"] = report_json(merged);
  o.report["unmerged_term_count"] = raw.terms.size();
  o.report["M_l"] = json_number(M);
  o.report["pass"] = true;
  return kExitPass;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  check_keys(j, "", {"command", "scenario_ref", "overrides", "output", "alpha"});
  RunConfig c;
  if (j.contains("command")) {
    c.command = str(j["command"], "command");
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
      throw SchemaError("command", "unknown command '" + c.command + "'");
  }
  if (j.contains("scenario_ref")) c.scenario_ref = str(j["scenario_ref"], "scenario_ref");

  if (j.contains("overrides")) {
    const Json& o = j["overrides"];
    check_keys(o, "overrides", {"horizon", "grid_resolution", "tolerance", "window", "t_values", "s_values"});
    if (o.contains("horizon")) {
      c.overrides.horizon = integer(o["horizon"], "overrides.horizon");
      if (*c.overrides.horizon < 4) throw RangeError("overrides.horizon", "horizon must be >= 4");
    }
    if (o.contains("grid_resolution")) {
      c.overrides.grid_resolution = num(o["grid_resolution"], "overrides.grid_resolution");
      if (!(*c.overrides.grid_resolution > 0.0))
        throw RangeError("overrides.grid_resolution", "resolution must be positive");
    }
    if (o.contains("tolerance")) {
      c.overrides.tolerance = num(o["tolerance"], "overrides.tolerance");
      if (!(*c.overrides.tolerance > 0.0)) throw RangeError("overrides.tolerance", "tolerance must be positive");
    }
    if (o.contains("window")) {
      const Json& w = o["window"];
      if (!w.is_array() || w.size() != 2) throw SchemaError("overrides.window", "expected [n1, n2]");
      const int n1 = integer(w[0], "overrides.window[0]");
      const int n2 = integer(w[1], "overrides.window[1]");
      if (n1 < 1 || n2 < n1) throw RangeError("overrides.window", "need 1 <= n1 <= n2");
      c.overrides.window = std::make_pair(n1, n2);
    }
    if (o.contains("t_values")) c.overrides.t_values = nonnegative_list(o["t_values"], "overrides.t_values");
    if (o.contains("s_values")) c.overrides.s_values = nonnegative_list(o["s_values"], "overrides.s_values");
  }

  if (j.contains("output")) {
    const Json& o = j["output"];
    check_keys(o, "output", {"json_path", "csv_dir", "verbosity", "format"});
    if (o.contains("json_path")) c.output.json_path = str(o["json_path"], "output.json_path");
    if (o.contains("csv_dir")) c.output.csv_dir = str(o["csv_dir"], "output.csv_dir");
    if (o.contains("verbosity")) {
      c.output.verbosity = integer(o["verbosity"], "output.verbosity");
      if (c.output.verbosity < 0 || c.output.verbosity > 2) throw RangeError("output.verbosity", "must be 0, 1 or 2");
    }
    if (o.contains("format")) {
      c.output.format = str(o["format"], "output.format");
      if (c.output.format != "json" && c.output.format != "csv" && c.output.format != "both")
        throw SchemaError("output.format", "expected json, csv or both");
    }
  }

  if (j.contains("alpha")) {
    const Json& a = j["alpha"];
    if (!a.is_array() || a.empty()) throw SchemaError("alpha", "expected a non-empty array of integers");
    MultiIndex alpha;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int v = integer(a[i], "alpha[" + std::to_string(i) + "]");
      if (v < 0) throw RangeError("alpha[" + std::to_string(i) + "]", "entries must be >= 0");
      alpha.push_back(v);
    }
    if (order(alpha) < 1) throw RangeError("alpha", "need |alpha| >= 1");
    c.alpha = alpha;
  }

  const bool needs_scenario = c.command == "diagnose" || c.command == "invariance" || c.command == "semigroup";
  if (needs_scenario && !c.scenario_ref) throw SchemaError("scenario_ref", "required by command " + c.command);
  if (c.scenario_ref && !scenario_exists(*c.scenario_ref))
    throw SchemaError("scenario_ref", "no built-in scenario or file named '" + *c.scenario_ref + "'");
  if (c.command == "expansion" && !c.alpha) throw SchemaError("alpha", "required by command expansion");
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

Json emit_config(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.scenario_ref) j["scenario_ref"] = *c.scenario_ref;
  Json o = Json::object();
  if (c.overrides.horizon) o["horizon"] = *c.overrides.horizon;
  if (c.overrides.grid_resolution) o["grid_resolution"] = *c.overrides.grid_resolution;
  if (c.overrides.tolerance) o["tolerance"] = *c.overrides.tolerance;
  if (c.overrides.window) o["window"] = {c.overrides.window->first, c.overrides.window->second};
  if (!c.overrides.t_values.empty()) o["t_values"] = c.overrides.t_values;
  if (!c.overrides.s_values.empty()) o["s_values"] = c.overrides.s_values;
  j["overrides"] = o;
  Json out = {{"verbosity", c.output.verbosity}, {"format", c.output.format}};
  if (c.output.json_path) out["json_path"] = *c.output.json_path;
  if (c.output.csv_dir) out["csv_dir"] = *c.output.csv_dir;
  j["output"] = out;
  if (c.alpha) j["alpha"] = *c.alpha;
  return j;
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Outputs o;
  o.report["schema_version"] = kSchemaVersion;
  o.report["command"] = c.command;
  o.report["config"] = config_for_report(c);
  int code = kExitUsage;
  try {
    if (c.command == "catalog") code = cmd_catalog(c, out, o);
    else if (c.command == "diagnose") code = cmd_diagnose(c, out, o);
    else if (c.command == "invariance") code = cmd_invariance(c, out, o);
    else if (c.command == "semigroup") code = cmd_semigroup(c, out, o);
    else if (c.command == "expansion") code = cmd_expansion(c, out, o);
    emit_outputs(c, o);
  } catch (const SchemaError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagnostics for weighted composition operators C(f) = w * (f o psi)", "wco"};
  std::string command;
  std::string config_path;
  std::string scenario;
  std::optional<int> horizon;
  std::optional<double> tol;
  std::string out_dir;
  std::string format;
  std::vector<int> alpha;
  int verbosity = -1;
  app.add_option("command", command, "diagnose | invariance | semigroup | catalog | expansion")
      ->check(CLI::IsMember(kCommands));
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--scenario", scenario, "built-in scenario name or scenario JSON file");
  app.add_option("--horizon", horizon, "iterate horizon M (>= 4)");
  app.add_option("--tol", tol, "tolerance override");
  app.add_option("--out", out_dir, "directory for report.json and CSV files");
  app.add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--alpha", alpha, "multi-index for the expansion command, e.g. 2,1")->delimiter(',');
  app.add_option("--verbosity", verbosity, "0, 1 or 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Json j = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw SchemaError("--config", "cannot read " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      try {
        j = Json::parse(ss.str());
      } catch (const std::exception& e) {
        throw SchemaError("--config", std::string("malformed JSON: ") + e.what());
      }
      if (!j.is_object()) throw SchemaError("config", "expected an object");
    }
    if (!command.empty()) j["command"] = command;
    if (!scenario.empty()) j["scenario_ref"] = scenario;
    if (horizon) j["overrides"]["horizon"] = *horizon;
    if (tol) j["overrides"]["tolerance"] = *tol;
    if (!out_dir.empty()) {
      j["output"]["json_path"] = (fs::path(out_dir) / "report.json").string();
      j["output"]["csv_dir"] = out_dir;
    }
    if (!format.empty()) j["output"]["format"] = format;
    if (verbosity >= 0) j["output"]["verbosity"] = verbosity;
    if (!alpha.empty()) j["alpha"] = alpha;
    const RunConfig c = parse_config(j);
    return execute(c, out, err);
  } catch (const SchemaError& e) {
    err << "configuration error: " << e.what() << '\n';
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace wco
