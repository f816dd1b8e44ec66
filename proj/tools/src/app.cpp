#include "causal_cli/app.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "causal/error.hpp"
#include "causal/parallel.hpp"
#include "causal_cli/presets.hpp"
#include "causal_cli/runner.hpp"
#include "causal_cli/scenario.hpp"

namespace causal::cli {

namespace {

std::string axes_summary(const Point& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.bc.axes.size(); ++i) {
    const auto& a = p.bc.axes[i];
    if (i) os << " x ";
    os << to_string(a.kind);
    if (a.length) os << ' ' << *a.length;
  }
  return os.str();
}

std::string list_summary(const std::vector<double>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_number(v[i]);
  return os.str() + ']';
}

// Distinct per-series values joined with '/'.
void add_distinct(std::vector<std::string>& seen, const std::string& v) {
  if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string r;
  for (std::size_t i = 0; i < v.size(); ++i) r += (i ? sep : "") + v[i];
  return r;
}

void list_figures(std::ostream& out) {
  std::vector<std::array<std::string, 7>> rows{{"id", "boundary", "cutoff", "zero_mode", "dx", "sweep", "series"}};
  std::vector<std::string> titles{""};
  for (const auto& p : presets()) {
    const auto s = load_scenario_text(std::string(p.yaml), {}, std::string(p.id));
    std::vector<std::string> cutoffs, zero, labels;
    for (std::size_t k = 0; k < s.series.size(); ++k) {
      const auto pt = resolve_point(s, k, s.grid.front());
      std::vector<std::string> c;
      for (int n : pt.opts.cutoff) c.push_back(std::to_string(n));
      add_distinct(cutoffs, join(c, ","));
      add_distinct(zero, !pt.bc.has_zero_mode() ? "none" : pt.opts.include_zero_mode ? "on" : "off");
      labels.push_back(s.series[k].label);
    }
    const auto pt = resolve_point(s, 0, s.grid.front());
    std::vector<double> dx(pt.A.center.size());
    for (std::size_t l = 0; l < dx.size(); ++l) dx[l] = pt.B.center[l] - pt.A.center[l];
    const std::string sweep = s.variable + " " + format_number(s.grid.front()) + ".." +
                              format_number(s.grid.back()) + " (" + std::to_string(s.grid.size()) + ")";
    rows.push_back({std::string(p.id), axes_summary(pt), join(cutoffs, "/"), join(zero, "/"),
                    s.variable == "D" ? "D+sigma" : list_summary(dx), sweep, join(labels, ", ")});
    titles.push_back(s.title);
  }
  std::array<std::size_t, 7> width{};
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      line += rows[i][c];
      if (c + 1 < rows[i].size()) line += std::string(width[c] + 2 - rows[i][c].size(), ' ');
    }
    out << line << '\n';
    if (!titles[i].empty()) out << std::string(width[0] + 2, ' ') << titles[i] << '\n';
  }
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Field commutators and causality estimators in bounded cavities", "causal_modes"};
  app.require_subcommand(1);

  int threads = 0;
  std::string out_dir;
  std::optional<double> epsilon;
  std::vector<int> cutoff;
  std::string zero_mode;
  std::string config_path, figure_id;

  app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it")
      ->check(CLI::NonNegativeNumber);

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory (default $CAUSAL_MODES_OUT or .)");
    sub->add_option("--epsilon", epsilon, "i-epsilon regulator")->check(CLI::PositiveNumber);
    sub->add_option("--cutoff", cutoff, "Mode cutoff per axis, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--include-zero-mode", zero_mode, "Include the zero mode")
        ->check(CLI::IsMember({"true", "false"}));
    sub->fallthrough();
  };

  auto* run = app.add_subcommand("run", "Evaluate a scenario file");
  run->add_option("config", config_path, "Scenario YAML or JSON sidecar")->required();
  add_run_flags(run);
  auto* figure = app.add_subcommand("figure", "Evaluate a built-in figure preset");
  figure->add_option("id", figure_id, "Preset id, see list-figures")->required();
  add_run_flags(figure);
  auto* list = app.add_subcommand("list-figures", "Show the built-in presets");
  auto* self = app.add_subcommand("selftest", "Run quick invariant checks");
  self->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  set_thread_count(threads);

  try {
    if (list->parsed()) {
      list_figures(out);
      return kExitOk;
    }
    if (self->parsed()) return selftest(out) == 0 ? kExitOk : kExitCompute;

    Overrides ov;
    ov.epsilon = epsilon;
    if (!cutoff.empty()) ov.cutoff = cutoff;
    if (!zero_mode.empty()) ov.include_zero_mode = zero_mode == "true";
    if (out_dir.empty()) {
      const char* env = std::getenv("CAUSAL_MODES_OUT");
      out_dir = env && *env ? env : ".";
    }

    Scenario s;
    if (run->parsed()) {
      s = load_scenario_file(config_path, ov);
    } else {
      const auto* p = find_preset(figure_id);
      if (!p) throw ConfigError("id", "unknown figure '" + figure_id + "'; see list-figures");
      s = load_scenario_text(std::string(p->yaml), ov, std::string(p->id));
    }
    for (const auto& f : run_scenario(s, out_dir)) out << f.string() << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ComputeError& e) {
    err << "compute error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    err << "compute error: " << e.what() << '\n';
    return kExitCompute;
  }
}

}  // namespace causal::cli
