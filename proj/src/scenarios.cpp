#include "wco/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wco {

namespace {

// Schema helpers ------------------------------------------------------------

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw SchemaError(path + "." + key, "unknown key");
  }
}

const Json& need(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(path + "." + key, "missing key");
  return j.at(key);
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

Point get_point(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = get_number(j[i], path + "[" + std::to_string(i) + "]");
  return p;
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
}

// Components ----------------------------------------------------------------

DomainPtr parse_domain(const Json& j, const std::string& path) {
  check_keys(j, path, {"kind", "dim", "center", "radius", "axis", "offset"});
  const std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  if (kind == "whole") {
    const int d = get_int(need(j, path, "dim"), path + ".dim");
    if (d < 1) throw SchemaError(path + ".dim", "dimension must be >= 1");
    return std::make_shared<const Domain>(Domain::whole(d));
  }
  if (kind == "ball") {
    const Point c = get_point(need(j, path, "center"), path + ".center");
    const double r = get_number(need(j, path, "radius"), path + ".radius");
    if (!(r > 0.0)) throw RangeError(path + ".radius", "radius must be positive");
    return std::make_shared<const Domain>(Domain::ball(c, r));
  }
  if (kind == "half_space") {
    const int d = get_int(need(j, path, "dim"), path + ".dim");
    const int axis = get_int(need(j, path, "axis"), path + ".axis");
    if (axis < 0 || axis >= d) throw RangeError(path + ".axis", "axis out of range");
    const double off = j.contains("offset") ? get_number(j["offset"], path + ".offset") : 0.0;
    return std::make_shared<const Domain>(Domain::half_space(d, axis, off));
  }
  throw SchemaError(path + ".kind", "unknown domain kind '" + kind + "'");
}

DiffOperator parse_operator(const Json& j, const std::string& path) {
  check_keys(j, path, {"name", "dim", "space_dim", "terms", "elliptic", "hypoelliptic"});
  const std::string name = get_string(need(j, path, "name"), path + ".name");
  DiffOperator P;
  if (name == "laplace") {
    P = DiffOperator::laplace(get_int(need(j, path, "dim"), path + ".dim"));
  } else if (name == "heat") {
    P = DiffOperator::heat(get_int(need(j, path, "space_dim"), path + ".space_dim"));
  } else if (name == "cauchy_riemann") {
    P = DiffOperator::cauchy_riemann();
  } else if (name == "custom") {
    const int d = get_int(need(j, path, "dim"), path + ".dim");
    const Json& terms = need(j, path, "terms");
    if (!terms.is_array()) throw SchemaError(path + ".terms", "expected an array");
    std::vector<std::tuple<MultiIndex, double, double>> triples;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = path + ".terms[" + std::to_string(i) + "]";
      const Json& t = terms[i];
      if (!t.is_array() || t.size() != 3 || !t[0].is_array())
        throw SchemaError(tp, "expected [multi-index, re, im]");
      MultiIndex a;
      for (std::size_t k = 0; k < t[0].size(); ++k) a.push_back(get_int(t[0][k], tp + "[0]"));
      triples.emplace_back(a, get_number(t[1], tp + "[1]"), get_number(t[2], tp + "[2]"));
    }
    P = guarded(path, [&] { return DiffOperator::from_triples(d, triples, "custom"); });
  } else {
    throw SchemaError(path + ".name", "unknown operator '" + name + "'");
  }
  if (j.contains("elliptic")) P.elliptic = get_bool(j["elliptic"], path + ".elliptic");
  if (j.contains("hypoelliptic")) P.hypoelliptic = get_bool(j["hypoelliptic"], path + ".hypoelliptic");
  return P;
}

SpaceInstance parse_space(const Json& j, const std::string& path) {
  check_keys(j, path, {"tag", "r", "domain", "operator", "membership_residual_tol"});
  SpaceInstance s;
  const std::string tag = get_string(need(j, path, "tag"), path + ".tag");
  if (tag == "continuous") s.tag = SpaceInstance::Tag::Continuous;
  else if (tag == "cr") s.tag = SpaceInstance::Tag::Cr;
  else if (tag == "holomorphic") s.tag = SpaceInstance::Tag::Holomorphic;
  else if (tag == "pde_kernel") s.tag = SpaceInstance::Tag::PdeKernel;
  else throw SchemaError(path + ".tag", "unknown space tag '" + tag + "'");
  s.domain = parse_domain(need(j, path, "domain"), path + ".domain");
  if (j.contains("r")) {
    s.r = get_int(j["r"], path + ".r");
    if (s.r < -1) throw RangeError(path + ".r", "r must be -1 (infinity) or >= 0");
  }
  if (j.contains("operator")) s.op = parse_operator(j["operator"], path + ".operator");
  if (s.tag == SpaceInstance::Tag::PdeKernel && !s.op)
    throw SchemaError(path + ".operator", "pde_kernel spaces need an operator");
  if (s.tag == SpaceInstance::Tag::Holomorphic && s.domain->dim() != 2)
    throw SchemaError(path + ".domain", "holomorphic spaces live on C = R^2");
  if (s.op && s.op->dim() != s.domain->dim())
    throw SchemaError(path + ".operator", "operator dimension differs from the domain");
  if (j.contains("membership_residual_tol")) {
    s.membership_residual_tol = get_number(j["membership_residual_tol"], path + ".membership_residual_tol");
    if (!(s.membership_residual_tol > 0.0))
      throw RangeError(path + ".membership_residual_tol", "tolerance must be positive");
  }
  return s;
}

CompactGrid parse_grid(const Json& j, const std::string& path, const DomainPtr& domain,
                       std::optional<double> spacing_override = std::nullopt) {
  check_keys(j, path, {"kind", "center", "radius", "lower", "upper", "spacing", "count", "points"});
  const std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  auto spacing = [&] {
    const double h = spacing_override ? *spacing_override
                                      : get_number(need(j, path, "spacing"), path + ".spacing");
    if (!(h > 0.0)) throw RangeError(path + ".spacing", "spacing must be positive");
    return h;
  };
  CompactGrid g;
  if (kind == "ball") {
    const Point c = get_point(need(j, path, "center"), path + ".center");
    const double r = get_number(need(j, path, "radius"), path + ".radius");
    if (!(r > 0.0)) throw RangeError(path + ".radius", "radius must be positive");
    g = ball_grid(domain, c, r, spacing());
  } else if (kind == "box") {
    const Point lo = get_point(need(j, path, "lower"), path + ".lower");
    const Point hi = get_point(need(j, path, "upper"), path + ".upper");
    if (lo.size() != hi.size() || ((hi - lo).array() < 0).any())
      throw RangeError(path, "box corners are inconsistent");
    g = box_grid(domain, lo, hi, spacing());
  } else if (kind == "circle") {
    const Point c = get_point(need(j, path, "center"), path + ".center");
    const double r = get_number(need(j, path, "radius"), path + ".radius");
    const int n = get_int(need(j, path, "count"), path + ".count");
    if (c.size() != 2 || n < 1 || !(r > 0.0)) throw RangeError(path, "invalid circle");
    g = circle_grid(domain, c, r, n);
  } else if (kind == "points") {
    const Json& pts = need(j, path, "points");
    if (!pts.is_array()) throw SchemaError(path + ".points", "expected an array");
    std::vector<Point> ps;
    for (std::size_t i = 0; i < pts.size(); ++i)
      ps.push_back(get_point(pts[i], path + ".points[" + std::to_string(i) + "]"));
    g = point_grid(domain, ps, "points");
  } else {
    throw SchemaError(path + ".kind", "unknown grid kind '" + kind + "'");
  }
  if (g.empty()) throw RangeError(path, "grid has no points inside the domain");
  if (g.dim() != domain->dim()) throw SchemaError(path, "grid dimension differs from the domain");
  for (std::size_t k = 0; k < g.size(); ++k)
    if (!domain->contains(g.point(k))) throw RangeError(path, "grid point outside the domain");
  return g;
}

ScalarField parse_field(const Json& j, const std::string& path, const std::vector<std::string>& vars) {
  const std::string text = get_string(j, path);
  return guarded(path, [&] { return ScalarField::parse(text, vars); });
}

const std::map<std::string, std::set<std::string>>& diagnostic_params() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"stable", {}},
      {"monotone_escape", {}},
      {"power_bounded", {}},
      {"weight_orbit_bounded", {}},
      {"routes_agree", {}},
      {"growth_class", {}},
      {"growth_rate", {}},
      {"mean_ergodic", {"limits", "window", "tol", "limit_tol"}},
      {"uniform_mean_ergodic", {"window", "tol"}},
      {"dense", {"m_max", "density_floor"}},
      {"heat_invariance", {"tol"}},
      {"invariance_residuals", {"tol"}},
      {"closure", {"tol"}},
      {"closure_residual", {"tol"}},
      {"semigroup", {"t", "eps", "field", "checks"}},
      {"semigroup_law", {"pairs", "tol", "field"}},
      {"generator", {"h", "tol", "field"}},
      {"cr_bound", {"l_max", "m_max"}},
      {"expansion_matches_fd", {"order_max", "m_max"}},
  };
  return table;
}

Expectation parse_expectation(const Json& j, const std::string& path, const std::string& diag) {
  check_keys(j, path, {"value", "provenance", "tolerance", "params"});
  Expectation e;
  e.value = need(j, path, "value");
  e.provenance = get_string(need(j, path, "provenance"), path + ".provenance");
  if (j.contains("tolerance")) {
    e.tolerance = get_number(j["tolerance"], path + ".tolerance");
    if (!(*e.tolerance > 0.0)) throw RangeError(path + ".tolerance", "tolerance must be positive");
  }
  if (j.contains("params")) {
    require_object(j["params"], path + ".params");
    const auto& allowed = diagnostic_params().at(diag);
    for (const auto& [key, _] : j["params"].items())
      if (!allowed.count(key)) throw SchemaError(path + ".params." + key, "unknown parameter");
    e.params = j["params"];
  }
  return e;
}

}  // namespace

const std::vector<std::string>& known_diagnostics() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : diagnostic_params()) out.push_back(k);
    return out;
  }();
  return names;
}

Scenario parse_scenario(const Json& j, const std::string& path) {
  check_keys(j, path, {"name", "description", "space", "variables", "weight", "symbol",
                       "test_fields", "solutions", "K", "expected", "assumption_flags"});
  Scenario s;
  s.source = j;
  s.name = get_string(need(j, path, "name"), path + ".name");
  if (s.name.empty()) throw SchemaError(path + ".name", "name must not be empty");
  if (j.contains("description")) s.description = get_string(j["description"], path + ".description");
  s.space = parse_space(need(j, path, "space"), path + ".space");
  const int d = s.space.domain->dim();

  s.variables = j.contains("variables") ? get_strings(j["variables"], path + ".variables")
                                        : default_variables(d);
  if (static_cast<int>(s.variables.size()) != d)
    throw SchemaError(path + ".variables", "one variable per dimension required");

  s.weight = parse_field(need(j, path, "weight"), path + ".weight", s.variables);

  const std::string sp = path + ".symbol";
  const Json& sym = need(j, path, "symbol");
  check_keys(sym, sp, {"complex", "components"});
  if (sym.contains("complex") == sym.contains("components"))
    throw SchemaError(sp, "give exactly one of 'complex' or 'components'");
  if (sym.contains("complex")) {
    if (d != 2) throw SchemaError(sp + ".complex", "complex symbols need dimension 2");
    const std::string text = get_string(sym["complex"], sp + ".complex");
    s.symbol = guarded(sp + ".complex", [&] { return SelfMap::parse_complex(text); });
  } else {
    const auto comps = get_strings(sym["components"], sp + ".components");
    s.symbol = guarded(sp + ".components", [&] { return SelfMap::parse(comps, s.variables); });
  }

  const Json& tf = need(j, path, "test_fields");
  if (!tf.is_array() || tf.empty()) throw SchemaError(path + ".test_fields", "expected a non-empty array");
  for (std::size_t i = 0; i < tf.size(); ++i)
    s.test_fields.push_back(parse_field(tf[i], path + ".test_fields[" + std::to_string(i) + "]", s.variables));
  if (j.contains("solutions")) {
    const Json& so = j["solutions"];
    if (!so.is_array()) throw SchemaError(path + ".solutions", "expected an array");
    for (std::size_t i = 0; i < so.size(); ++i)
      s.solutions.push_back(parse_field(so[i], path + ".solutions[" + std::to_string(i) + "]", s.variables));
  }

  s.K = parse_grid(need(j, path, "K"), path + ".K", s.space.domain);

  if (j.contains("assumption_flags")) {
    const std::string fp = path + ".assumption_flags";
    const Json& f = j["assumption_flags"];
    check_keys(f, fp, {"denseness_c", "dense_range_a", "kernel_b", "p_convex"});
    if (f.contains("denseness_c")) s.assumption_flags.denseness_c = get_bool(f["denseness_c"], fp + ".denseness_c");
    if (f.contains("dense_range_a")) s.assumption_flags.dense_range_a = get_bool(f["dense_range_a"], fp + ".dense_range_a");
    if (f.contains("kernel_b")) s.assumption_flags.kernel_b = get_bool(f["kernel_b"], fp + ".kernel_b");
    if (f.contains("p_convex")) s.assumption_flags.p_convex = get_bool(f["p_convex"], fp + ".p_convex");
  }

  const Json& ex = need(j, path, "expected");
  require_object(ex, path + ".expected");
  for (const auto& [key, val] : ex.items()) {
    const std::string ep = path + ".expected." + key;
    if (!diagnostic_params().count(key)) throw SchemaError(ep, "unknown diagnostic");
    s.expected[key] = parse_expectation(val, ep, key);
  }
  return s;
}

Scenario resolve_scenario(const std::string& ref) {
  for (const auto& s : builtin_catalog())
    if (s.name == ref) return s;
  std::ifstream in(ref);
  if (!in) throw SchemaError("scenario_ref", "no built-in scenario or readable file named '" + ref + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("scenario_ref", std::string("malformed scenario file: ") + e.what());
  }
  return parse_scenario(j, "scenario");
}

Scenario with_resolution(const Scenario& s, double spacing) {
  if (!(spacing > 0.0)) throw RangeError("overrides.grid_resolution", "must be positive");
  Scenario out = s;
  const Json& k = s.source.at("K");
  if (k.contains("spacing")) out.K = parse_grid(k, "K", s.space.domain, spacing);
  return out;
}

}  // namespace wco
