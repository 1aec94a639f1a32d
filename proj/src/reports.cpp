#include "wco/reports.hpp"

#include <cmath>

namespace wco {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json json_complex(Complex v) { return Json::array({json_number(v.real()), json_number(v.imag())}); }

Json json_point(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(json_number(p[i]));
  return a;
}

Json json_multi_index(const MultiIndex& a) { return Json(a); }

namespace {

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>) return json_number(*v);
  else if constexpr (std::is_same_v<T, int>) return *v;
  else return report_json(*v);
}

}  // namespace

Json report_json(const EscapeEvidence& e) {
  return {{"point", json_point(e.point)},
          {"iterate", e.iterate},
          {"magnitude", json_number(e.magnitude)},
          {"reason", e.reason}};
}

Json report_json(const OrbitReport& r) {
  return {{"stable", r.stable},
          {"horizon", r.horizon},
          {"enclosing_level", optional_json(r.enclosing_level)},
          {"escape_evidence", optional_json(r.escape_evidence)},
          {"monotone_escape", r.monotone_escape},
          {"note", "evidence up to the horizon, not a proof"}};
}

Json report_json(const GrowthReport& r) {
  return {{"target_spec", r.target},
          {"source_spec", r.source},
          {"gamma_hat", numbers(r.values)},
          {"log_gamma_hat", numbers(r.log_values)},
          {"classification", to_string(r.classification)},
          {"rate", json_number(r.rate)},
          {"fit_residual", json_number(r.fit_residual)},
          {"evidence", optional_json(r.evidence)}};
}

Json report_json(const PowerBoundedReport& r) {
  return {{"orbit", report_json(r.orbit)},
          {"growth", report_json(r.growth)},
          {"weight_orbit_bounded", r.weight_orbit_bounded},
          {"weight_orbit_log_norms", numbers(r.weight_orbit_log_values)},
          {"power_bounded", r.power_bounded},
          {"topologizable_route", r.topologizable_route},
          {"growth_route", r.growth_route},
          {"consistent", r.consistent}};
}

Json report_json(const ErgodicReport& r) {
  Json lim = Json::array();
  for (auto v : r.limit_estimate) lim.push_back(json_complex(v));
  return {{"converged", r.converged},
          {"limit_estimate", lim},
          {"cauchy_defect", json_number(r.cauchy_defect)},
          {"rate_estimate", optional_json(r.rate_estimate)},
          {"scale", json_number(r.scale)},
          {"tol", json_number(r.tol)},
          {"window", {r.n1, r.n2}},
          {"family_size", r.family_size}};
}

Json report_json(const DensenessReport& r) {
  return {{"density", numbers(r.density)},
          {"flagged", r.flagged},
          {"dense", r.dense},
          {"density_floor", json_number(r.density_floor)}};
}

Json report_json(const ExpansionTable& t) {
  Json terms = Json::array();
  for (const auto& term : t.terms) {
    Json factors = Json::array();
    for (const auto& f : term.factors)
      factors.push_back({{"gamma", json_multi_index(f.gamma)}, {"component", f.component}});
    terms.push_back({{"beta", json_multi_index(term.beta)},
                     {"factors", factors},
                     {"multiplicity", term.multiplicity}});
  }
  Json n_beta = Json::array();
  for (const auto& [beta, n] : t.n_beta) n_beta.push_back({{"beta", json_multi_index(beta)}, {"n", n}});
  return {{"alpha", json_multi_index(t.alpha)},
          {"dim", t.dim},
          {"merged", t.merged},
          {"term_count", t.terms.size()},
          {"total_terms", t.total_terms()},
          {"B_constant", json_number(t.B_constant)},
          {"n_beta", n_beta},
          {"terms", terms}};
}

Json report_json(const CrBound& b) {
  return {{"lhs", json_number(b.lhs)},
          {"rhs", json_number(b.rhs)},
          {"M_l", json_number(b.M_l)},
          {"source_norm", json_number(b.source_norm)},
          {"symbol_factor", json_number(b.symbol_factor)},
          {"weight_factor", json_number(b.weight_factor)},
          {"exact", b.exact},
          {"fd_slack", json_number(b.fd_slack)},
          {"holds", b.holds}};
}

Json report_json(const InvarianceVerdict& v) {
  Json conds = Json::object();
  for (const auto& [k, c] : v.conditions)
    conds[k] = {{"residual", json_number(c.residual)}, {"pass", c.pass}};
  return {{"conditions", conds},
          {"overall", v.overall},
          {"probe", v.probe.source()},
          {"probe_size", v.probe.size()},
          {"tol", json_number(v.tol)}};
}

Json report_json(const ClosureReport& r) {
  Json per = Json::array();
  for (std::size_t i = 0; i < r.labels.size(); ++i)
    per.push_back({{"solution", r.labels[i]}, {"residual", json_number(r.residuals[i])}});
  return {{"solutions", per},
          {"residual", json_number(r.residual)},
          {"pass", r.pass},
          {"tol", json_number(r.tol)}};
}

Json report_json(const TailBudget& b) {
  return {{"gamma", json_number(b.gamma)},
          {"source_spec", b.source_spec},
          {"target_spec", b.target_spec},
          {"N", b.N},
          {"tail_bound", json_number(b.tail_bound)},
          {"eps", json_number(b.eps)},
          {"t", json_number(b.t)},
          {"f_norm_L", json_number(b.f_norm_L)},
          {"orbit_horizon", b.orbit_horizon}};
}

Json report_json(const SemigroupLawReport& r) {
  return {{"t", json_number(r.t)},
          {"s", json_number(r.s)},
          {"defect", json_number(r.defect)},
          {"eps", json_number(r.eps)},
          {"tol", json_number(r.tol)},
          {"pass", r.pass}};
}

Json report_json(const GeneratorReport& r) {
  return {{"h", numbers(r.h)},
          {"defects", numbers(r.defects)},
          {"half_step_defects", numbers(r.half_defects)},
          {"ratios", numbers(r.ratios)},
          {"scale", json_number(r.scale)},
          {"tol", json_number(r.tol)},
          {"decreasing", r.decreasing},
          {"ratio_in_band", r.ratio_in_band},
          {"pass", r.pass}};
}

}  // namespace wco
