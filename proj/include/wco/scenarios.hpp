#pragma once

// Bundled operator scenarios with known verdicts, their JSON schema, and the
// runner that checks every declared expectation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wco/reports.hpp"

namespace wco {

struct AssumptionFlags {
  bool denseness_c = true;
  bool dense_range_a = true;
  bool kernel_b = true;
  bool p_convex = true;

  bool all() const { return denseness_c && dense_range_a && kernel_b && p_convex; }
};

/// One expected verdict or value. `provenance` says where it comes from, e.g.
/// closed_form, brute_force, construction, theorem_consequence, hand_check.
struct Expectation {
  Json value;
  std::string provenance;
  std::optional<double> tolerance;
  Json params = Json::object();
};

struct Scenario {
  std::string name;
  std::string description;
  SpaceInstance space;
  std::vector<std::string> variables;
  ScalarField weight;
  SelfMap symbol;
  std::vector<ScalarField> test_fields;
  std::vector<ScalarField> solutions;  // kernel elements for closure checks
  CompactGrid K;
  std::map<std::string, Expectation> expected;
  AssumptionFlags assumption_flags;
  Json source;  // the JSON the scenario was built from

  WCOperator op() const { return WCOperator{weight, symbol, space}; }
};

/// Diagnostics an expectation may name.
const std::vector<std::string>& known_diagnostics();

/// Builds a scenario from its JSON description. Throws SchemaError with the
/// path of the offending key.
Scenario parse_scenario(const Json& j, const std::string& path = "scenario");

/// The bundled scenarios in a fixed order.
const std::vector<Scenario>& builtin_catalog();
const Json& builtin_catalog_json();

/// Built-in name, or a path to a JSON file holding one scenario.
Scenario resolve_scenario(const std::string& ref);

struct RunOverrides {
  std::optional<int> horizon;
  std::optional<double> grid_resolution;
  std::optional<double> tolerance;
  std::optional<std::pair<int, int>> window;
  std::vector<double> t_values;
  std::vector<double> s_values;

  friend bool operator==(const RunOverrides&, const RunOverrides&) = default;
};

/// Rebuilds K at a new spacing when the grid kind supports it.
Scenario with_resolution(const Scenario& s, double spacing);

struct ExpectationResult {
  std::string diagnostic;
  Json expected;
  Json observed;
  std::string provenance;
  bool pass = false;
  std::string error;  // non-empty when the diagnostic threw
};

struct ScenarioReport {
  std::string name;
  std::vector<ExpectationResult> results;
  Json subreports = Json::object();
  Json csv_tables = Json::object();  // name -> {header: [...], rows: [[...]]}
  bool pass = true;
};

/// Runs every expected diagnostic; failures in one do not stop the others.
ScenarioReport run_scenario(const Scenario& s, const RunOverrides& overrides = {});

Json report_json(const ScenarioReport& r);

}  // namespace wco
