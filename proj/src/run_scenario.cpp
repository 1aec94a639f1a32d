#include <algorithm>
#include <cmath>

#include "wco/scenarios.hpp"

namespace wco {

namespace {

constexpr int kDefaultHorizon = 200;

double param_number(const Json& p, const char* key, double fallback) {
  return p.contains(key) ? p.at(key).get<double>() : fallback;
}

int param_int(const Json& p, const char* key, int fallback) {
  return p.contains(key) ? p.at(key).get<int>() : fallback;
}

// At most `count` evenly spread points of the grid.
CompactGrid subsample(const CompactGrid& g, std::size_t count) {
  if (g.size() <= count) return g;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(g.point(i * g.size() / count));
  return point_grid(g.domain(), pts, g.source() + " (subsample)");
}

double sup_on(const CompactGrid& grid, const ScalarField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) s = std::max(s, std::abs(f(grid.point(k))));
  return s;
}

bool matches(const Json& expected, const Json& observed, std::optional<double> tolerance) {
  if (expected.is_number()) {
    if (!observed.is_number()) return false;
    return std::abs(observed.get<double>() - expected.get<double>()) <= tolerance.value_or(1e-9);
  }
  if (expected.is_object()) {
    if (!observed.is_object()) return false;
    for (const auto& [k, v] : expected.items())
      if (!observed.contains(k) || !matches(v, observed.at(k), tolerance)) return false;
    return true;
  }
  return expected == observed;
}

class Runner {
 public:
  Runner(const Scenario& s, const RunOverrides& ov)
      : s_(s), ov_(ov), op_(s.op()), horizon_(ov.horizon.value_or(kDefaultHorizon)) {
    rep_.name = s.name;
  }

  ScenarioReport run() {
    for (const auto& [diag, exp] : s_.expected) {
      ExpectationResult r;
      r.diagnostic = diag;
      r.expected = exp.value;
      r.provenance = exp.provenance;
      try {
        r.observed = observe(diag, exp);
        r.pass = matches(exp.value, r.observed, exp.tolerance);
      } catch (const std::exception& e) {
        r.error = e.what();
        r.observed = nullptr;
        r.pass = false;
      }
      rep_.pass = rep_.pass && r.pass;
      rep_.results.push_back(std::move(r));
    }
    return std::move(rep_);
  }

 private:
  const OrbitReport& orbit() {
    if (!orbit_) {
      OrbitOptions oo;
      oo.horizon = horizon_;
      orbit_ = check_stable_orbits(s_.symbol, s_.K, oo);
      rep_.subreports["orbit"] = report_json(*orbit_);
      Json rows = Json::array();
      for (std::size_t m = 0; m < orbit_->level_trace.size(); ++m)
        rows.push_back({m, json_number(orbit_->level_trace[m])});
      rep_.csv_tables["orbit_levels"] = {{"header", {"m", "level"}}, {"rows", rows}};
    }
    return *orbit_;
  }

  const PowerBoundedReport& power_bounded() {
    if (!pb_) {
      pb_ = test_power_bounded_characterization(op_, s_.test_fields, s_.K, horizon_);
      rep_.subreports["power_bounded"] = report_json(*pb_);
      Json rows = Json::array();
      for (std::size_t i = 0; i < pb_->growth.values.size(); ++i)
        rows.push_back({i + 1, json_number(pb_->growth.values[i]), json_number(pb_->growth.log_values[i])});
      rep_.csv_tables["growth"] = {{"header", {"m", "gamma_hat", "log_gamma_hat"}}, {"rows", rows}};
    }
    return *pb_;
  }

  std::pair<int, int> window(const Json& p) const {
    if (ov_.window) return *ov_.window;
    if (p.contains("window")) return {p["window"][0].get<int>(), p["window"][1].get<int>()};
    return {500, 1000};
  }

  double ergodic_tol(const Json& p) const {
    return ov_.tolerance ? *ov_.tolerance : param_number(p, "tol", 1e-3);
  }

  const ScalarField& field(const Json& p) const {
    const int i = param_int(p, "field", 0);
    if (i < 0 || i >= static_cast<int>(s_.test_fields.size())) throw Error("field index out of range");
    return s_.test_fields[static_cast<std::size_t>(i)];
  }

  const InvarianceVerdict& invariance() {
    if (!invariance_) {
      double tol = 1e-6;
      if (auto it = s_.expected.find("heat_invariance"); it != s_.expected.end())
        tol = param_number(it->second.params, "tol", tol);
      invariance_ = verify_heat_invariance(s_.weight, s_.symbol, s_.K, tol);
      rep_.subreports["heat_invariance"] = report_json(*invariance_);
    }
    return *invariance_;
  }

  const ClosureReport& closure() {
    if (!closure_) {
      double tol = 1e-6;
      if (auto it = s_.expected.find("closure"); it != s_.expected.end())
        tol = param_number(it->second.params, "tol", tol);
      std::vector<ScalarField> sols = s_.solutions;
      if (sols.empty()) {
        const auto P = s_.space.kernel_operator();
        sols = (P && P->name == "heat") ? heat_solutions(s_.space.domain->dim() - 1) : s_.test_fields;
      }
      closure_ = closure_sampling_check(op_, sols, s_.K, tol);
      rep_.subreports["closure"] = report_json(*closure_);
    }
    return *closure_;
  }

  Json observe(const std::string& diag, const Expectation& e) {
    const Json& p = e.params;
    if (diag == "stable") return orbit().stable;
    if (diag == "monotone_escape") return orbit().monotone_escape;
    if (diag == "power_bounded") return power_bounded().power_bounded;
    if (diag == "weight_orbit_bounded") return power_bounded().weight_orbit_bounded;
    if (diag == "routes_agree") return power_bounded().consistent;
    if (diag == "growth_class") return to_string(power_bounded().growth.classification);
    if (diag == "growth_rate") return json_number(power_bounded().growth.rate);
    if (diag == "mean_ergodic") return mean_ergodic(p);
    if (diag == "uniform_mean_ergodic") return uniform_mean_ergodic(p);
    if (diag == "dense") {
      const DensenessReport r = check_denseness_hypothesis(
          s_.weight, s_.symbol, s_.K, param_int(p, "m_max", 20), param_number(p, "density_floor", 0.5));
      rep_.subreports["denseness"] = report_json(r);
      return r.dense;
    }
    if (diag == "heat_invariance") return invariance().overall;
    if (diag == "invariance_residuals") {
      Json out = Json::object();
      for (const auto& [k, c] : invariance().conditions) out[k] = json_number(c.residual);
      return out;
    }
    if (diag == "closure") return closure().pass;
    if (diag == "closure_residual") return json_number(closure().residual);
    if (diag == "semigroup") return semigroup(p, e);
    if (diag == "semigroup_law") return semigroup_law(p);
    if (diag == "generator") {
      const CompactGrid probe = subsample(s_.K, 16);
      std::vector<double> hs = default_h_sequence();
      if (p.contains("h")) hs = p["h"].get<std::vector<double>>();
      const GeneratorReport r = check_generator(op_, field(p), probe, hs, param_number(p, "tol", 1e-3));
      rep_.subreports["generator"] = report_json(r);
      return r.pass && r.ratio_in_band;
    }
    if (diag == "cr_bound") return cr_bound(p);
    if (diag == "expansion_matches_fd") return expansion_matches_fd(p);
    throw Error("unknown diagnostic " + diag);
  }

  Json mean_ergodic(const Json& p) {
    const auto [n1, n2] = window(p);
    const double tol = ergodic_tol(p);
    std::vector<ScalarField> limits;
    if (p.contains("limits")) {
      for (const auto& t : p["limits"]) limits.push_back(ScalarField::parse(t.get<std::string>(), s_.variables));
      if (limits.size() != s_.test_fields.size()) throw Error("one limit per test field required");
    }
    bool ok = true;
    Json sub = Json::array();
    for (std::size_t i = 0; i < s_.test_fields.size(); ++i) {
      const ErgodicReport r = test_mean_ergodic(op_, s_.test_fields[i], s_.K, n1, n2, tol);
      Json j = report_json(r);
      j.erase("limit_estimate");
      j["field"] = s_.test_fields[i].label();
      ok = ok && r.converged;
      if (!limits.empty()) {
        double err = 0.0;
        for (std::size_t k = 0; k < s_.K.size(); ++k)
          err = std::max(err, std::abs(r.limit_estimate[k] - limits[i](s_.K.point(k))));
        const double limit_tol = param_number(p, "limit_tol", tol * r.scale);
        j["limit"] = limits[i].label();
        j["limit_error"] = json_number(err);
        j["limit_tol"] = json_number(limit_tol);
        ok = ok && err < limit_tol;
      }
      sub.push_back(j);
    }
    rep_.subreports["mean_ergodic"] = sub;
    return ok;
  }

  Json uniform_mean_ergodic(const Json& p) {
    const auto [n1, n2] = window(p);
    std::vector<ScalarField> family;
    for (const auto& f : s_.test_fields) {
      const double n = sup_on(s_.K, f);
      if (n > 0.0) family.push_back(Complex(1.0 / n) * f);
    }
    const ErgodicReport r = test_uniform_mean_ergodic(op_, family, s_.K, n1, n2, ergodic_tol(p));
    Json j = report_json(r);
    j.erase("limit_estimate");
    rep_.subreports["uniform_mean_ergodic"] = j;
    return r.converged;
  }

  Json semigroup(const Json& p, const Expectation& e) {
    const double t = param_number(p, "t", 1.0);
    const double eps = param_number(p, "eps", 1e-9);
    Json sub;
    try {
      const auto [Tf, budget] = exp_apply(op_, field(p), t, eps, SeminormSpec::sup(s_.K));
      sub["budget"] = report_json(budget);
      bool checks_ok = true;
      Json checks = Json::array();
      if (p.contains("checks")) {
        for (const auto& c : p["checks"]) {
          Point x(static_cast<Eigen::Index>(c["at"].size()));
          for (std::size_t i = 0; i < c["at"].size(); ++i) x[static_cast<Eigen::Index>(i)] = c["at"][i].get<double>();
          const Complex want(c["value"][0].get<double>(), c["value"][1].get<double>());
          const Complex got = Tf(x);
          const double err = std::abs(got - want);
          checks_ok = checks_ok && err <= e.tolerance.value_or(1e-9);
          checks.push_back({{"at", json_point(x)}, {"value", json_complex(got)}, {"error", json_number(err)}});
        }
      }
      sub["checks"] = checks;
      rep_.subreports["semigroup"] = sub;
      return checks_ok ? "certified" : "certified_with_mismatch";
    } catch (const NoGrowthBound& ex) {
      sub["refusal"] = ex.what();
      rep_.subreports["semigroup"] = sub;
      return "refused";
    }
  }

  Json semigroup_law(const Json& p) {
    std::vector<std::pair<double, double>> pairs;
    if (p.contains("pairs")) {
      for (const auto& q : p["pairs"]) pairs.emplace_back(q[0].get<double>(), q[1].get<double>());
    } else {
      const std::vector<double> base = {0.0, 0.2, 0.3, 1.0};
      const auto& ts = ov_.t_values.empty() ? base : ov_.t_values;
      const auto& ss = ov_.s_values.empty() ? base : ov_.s_values;
      for (double t : ts)
        for (double s : ss) pairs.emplace_back(t, s);
    }
    const CompactGrid probe = subsample(s_.K, 16);
    const double tol = param_number(p, "tol", 1e-8);
    bool ok = true;
    Json sub = Json::array();
    for (const auto& [t, s] : pairs) {
      const SemigroupLawReport r = check_semigroup_law(op_, field(p), t, s, probe, tol);
      ok = ok && r.pass;
      sub.push_back(report_json(r));
    }
    rep_.subreports["semigroup_law"] = sub;
    return ok;
  }

  Json cr_bound(const Json& p) {
    const int l_max = param_int(p, "l_max", 3);
    const int m_max = param_int(p, "m_max", 10);
    int checks = 0, violations = 0;
    bool exact = true;
    double worst = 0.0;
    for (const auto& f : s_.test_fields)
      for (int l = 0; l <= l_max; ++l)
        for (int m = 1; m <= m_max; ++m) {
          for (const CrBound& b : {cr_seminorm_bound(op_, f, l, s_.K, m),
                                   weighted_cr_growth(op_, f, l, s_.K, std::nullopt, m)}) {
            ++checks;
            if (!b.holds) ++violations;
            exact = exact && b.exact;
            if (b.rhs > 0.0) worst = std::max(worst, b.lhs / b.rhs);
          }
        }
    rep_.subreports["cr_bound"] = {{"checks", checks},
                                   {"violations", violations},
                                   {"all_exact", exact},
                                   {"max_lhs_over_rhs", json_number(worst)}};
    return violations == 0;
  }

  Json expansion_matches_fd(const Json& p) {
    const int order_max = param_int(p, "order_max", 3);
    const int m_max = param_int(p, "m_max", 3);
    const int d = s_.K.dim();
    const WCOperator plain = WCOperator::composition(s_.symbol, s_.space);
    const CompactGrid probe = subsample(s_.K, 8);
    int checks = 0, failures = 0;
    double worst = 0.0;
    for (const auto& alpha : indices_up_to(d, order_max)) {
      if (order(alpha) == 0) continue;
      const ExpansionTable table = build_expansion(alpha, d);
      for (int m = 1; m <= m_max; ++m)
        for (const auto& f : s_.test_fields) {
          const ScalarField g = apply_iterate(plain, f, m).without_oracle();
          for (std::size_t k = 0; k < probe.size(); ++k) {
            const Point x = probe.point(k);
            const Complex v = eval_expansion(table, plain, f, m, x);
            const Complex fd = finite_difference(g, alpha, x, s_.space.domain.get());
            const double rel = std::abs(v - fd) / (1.0 + std::abs(v));
            ++checks;
            worst = std::max(worst, rel);
            if (!(rel <= 1e-5)) ++failures;
          }
        }
    }
    rep_.subreports["expansion_vs_fd"] = {
        {"checks", checks}, {"failures", failures}, {"max_relative_error", json_number(worst)}};
    return failures == 0;
  }

  const Scenario& s_;
  RunOverrides ov_;
  WCOperator op_;
  int horizon_;
  ScenarioReport rep_;
  std::optional<OrbitReport> orbit_;
  std::optional<PowerBoundedReport> pb_;
  std::optional<InvarianceVerdict> invariance_;
  std::optional<ClosureReport> closure_;
};

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const RunOverrides& overrides) {
  if (overrides.grid_resolution) return Runner(with_resolution(s, *overrides.grid_resolution), overrides).run();
  return Runner(s, overrides).run();
}

Json report_json(const ScenarioReport& r) {
  Json exps = Json::array();
  for (const auto& e : r.results) {
    Json j = {{"diagnostic", e.diagnostic},
              {"expected", e.expected},
              {"observed", e.observed},
              {"provenance", e.provenance},
              {"pass", e.pass}};
    if (!e.error.empty()) j["error"] = e.error;
    exps.push_back(j);
  }
  return {{"name", r.name}, {"pass", r.pass}, {"expectations", exps}, {"subreports", r.subreports}};
}

}  // namespace wco
