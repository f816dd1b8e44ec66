#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "causal/detector_dynamics.hpp"
#include "causal/types.hpp"

namespace causal::cli {

enum class Quantity {
  Commutator,
  CommutatorOsc,
  CommutatorZeroMode,
  SmearedCommutator,
  Estimator,
  SignalMagnitude,
  Reference,
};

std::string_view to_string(Quantity q) noexcept;
std::optional<Quantity> parse_quantity(std::string_view text) noexcept;

/// Bad or inconsistent scenario input. Exit status 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Failure while evaluating a valid scenario. Exit status 3.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-line values that replace the corresponding `options` entries.
struct Overrides {
  std::optional<double> epsilon;
  std::optional<std::vector<int>> cutoff;
  std::optional<bool> include_zero_mode;
};

struct OutputSpec {
  std::string column;
  Quantity quantity;
};

struct SeriesSpec {
  std::string label;
  YAML::Node set;  // map of keys applied on top of the base scenario
};

struct Scenario {
  std::string name;
  std::string title;
  std::string notes;
  /// boundary, options and geometry sections, with overrides applied.
  YAML::Node base;
  std::string variable;
  std::vector<double> grid;
  std::vector<SeriesSpec> series;  // never empty
  std::vector<OutputSpec> outputs;
};

/// Throws ConfigError.
Scenario parse_scenario(const YAML::Node& root, const Overrides& overrides,
                        const std::string& fallback_name);
Scenario load_scenario_file(const std::string& path, const Overrides& overrides);
Scenario load_scenario_text(const std::string& text, const Overrides& overrides,
                            const std::string& fallback_name);

/// Everything needed to evaluate one (series, grid value) pair.
struct Point {
  BoundaryConfig bc;
  CommutatorOptions opts;
  DetectorSpec A;
  DetectorSpec B;
  std::optional<QubitState> state_a;
  std::optional<QubitState> state_b;
};

/// Throws ConfigError naming the offending field.
Point resolve_point(const Scenario& s, std::size_t series, double value);

/// Fully materialised scenario as JSON text. Parsing it back with
/// load_scenario_text reproduces the same evaluation points.
std::string resolved_json(const Scenario& s);

/// Grid values for {from, to, count[, spacing]} or an explicit list.
std::vector<double> expand_grid(const YAML::Node& node, const std::string& field);

}  // namespace causal::cli
