#pragma once

// Command-line front end: run configuration, its JSON schema, and the
// command dispatcher behind the `wco` executable.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wco/scenarios.hpp"

namespace wco {

struct OutputConfig {
  std::optional<std::string> json_path;
  std::optional<std::string> csv_dir;
  int verbosity = 1;
  std::string format = "json";  // json | csv | both

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  std::string command = "catalog";  // diagnose | invariance | semigroup | catalog | expansion
  std::optional<std::string> scenario_ref;
  RunOverrides overrides;
  OutputConfig output;
  std::optional<MultiIndex> alpha;  // expansion only

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Validates and applies defaults. Unknown keys raise SchemaError (with the
/// key path); out-of-range numbers raise RangeError.
RunConfig parse_config(const Json& j);
RunConfig parse_config_text(const std::string& text);

/// Inverse of parse_config: parse_config(emit_config(c)) == c.
Json emit_config(const RunConfig& c);

enum ExitCode { kExitPass = 0, kExitExpectationFailure = 1, kExitUsage = 2 };

/// Executes a validated configuration; summary to `out`, reports to the
/// configured paths.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: argument parsing, config loading, execution.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wco
