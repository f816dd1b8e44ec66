#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "causal_cli/scenario.hpp"

namespace causal::cli {

/// One evaluated grid point of one output.
struct Row {
  std::string series;
  double x = 0.0;
  Complex value;
  double abs = 0.0;
  std::size_t modes_summed = 0;
  double error_estimate = 0.0;
};

struct OutputTable {
  OutputSpec spec;
  std::vector<Row> rows;  // series-major, grid order within a series
};

/// Evaluates every output at every (series, grid) point. Throws ComputeError.
std::vector<OutputTable> evaluate(const Scenario& s);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// RFC-4180 field quoting.
std::string csv_field(std::string_view text);

std::string to_csv(const Scenario& s, const OutputTable& t);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes `<name>_<column>.csv` per output and `<name>.json`. Returns the paths.
std::vector<std::filesystem::path> run_scenario(const Scenario& s,
                                                const std::filesystem::path& out_dir);

}  // namespace causal::cli
