#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinbath/timeseries.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

const char* version();

/// Raised for malformed or inconsistent configuration files.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Parsed `key = value` configuration. Unset optional fields take scenario
/// defaults when the scenario defines them.
struct ScenarioConfig {
  std::string scenario;
  std::optional<double> k_a;
  std::optional<double> k_b;
  std::optional<double> j;
  std::optional<std::string> bath;  // exact | gaussian-intro | gaussian-sec3a
  std::optional<int> bath_n;
  std::optional<std::string> state;
  std::vector<double> state_params;
  std::optional<double> t_max;
  std::optional<int> samples;
  std::string output;

  std::vector<double> j_values;
  std::vector<double> r_values;
  double delta_min = -1.0;
  double delta_max = 1.0;
  int delta_points = 101;
  int grid_points = 41;
  std::string oracle_mode = "common";
  double tolerance = 1e-10;
  std::optional<double> window_start;
  std::optional<double> window_end;
  /// Relative weight below which bath sectors are dropped (0 keeps all).
  double prune = 0.0;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

struct ScenarioInfo {
  std::string name;
  std::string description;
};
const std::vector<ScenarioInfo>& list_scenarios();

/// Fills scenario defaults into unset fields; returns the names of the
/// fields that were defaulted.
std::vector<std::string> apply_defaults(ScenarioConfig& cfg);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::pair<std::string, std::string>> derived;
  bool ok() const { return errors.empty(); }
};

/// Checks the configuration after defaults and reports derived quantities
/// (moments, delta, short-time predictions). Never throws for bad values.
ValidationReport validate(const ScenarioConfig& cfg);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct RunResult {
  TimeSeries series{{"t"}};
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<Check> checks;
  bool passed() const;
};

/// Validates, then runs. Throws ConfigError when validation fails.
RunResult run(ScenarioConfig cfg);

void write_report(std::ostream& os, const ValidationReport& r);
void write_summary(std::ostream& os, const RunResult& r);

}  // namespace spinbath
