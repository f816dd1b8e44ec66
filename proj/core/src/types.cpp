#include "causal/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "causal/error.hpp"

namespace causal {

std::string_view to_string(AxisKind kind) noexcept {
  switch (kind) {
    case AxisKind::Periodic: return "periodic";
    case AxisKind::Neumann: return "neumann";
    case AxisKind::Dirichlet: return "dirichlet";
    case AxisKind::Open: return "open";
  }
  return "unknown";
}

std::optional<AxisKind> parse_axis_kind(std::string_view text) noexcept {
  for (auto k : {AxisKind::Periodic, AxisKind::Neumann, AxisKind::Dirichlet, AxisKind::Open})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

std::string_view to_string(Summation s) noexcept {
  return s == Summation::PairwiseDeterministic ? "pairwise" : "compensated";
}

std::optional<Summation> parse_summation(std::string_view text) noexcept {
  if (text == "pairwise") return Summation::PairwiseDeterministic;
  if (text == "compensated") return Summation::SerialCompensated;
  return std::nullopt;
}

bool BoundaryConfig::has_zero_mode() const noexcept {
  return !axes.empty() && std::all_of(axes.begin(), axes.end(), [](const AxisSpec& a) {
    return a.kind == AxisKind::Periodic || a.kind == AxisKind::Neumann;
  });
}

bool BoundaryConfig::translation_invariant() const noexcept {
  return !axes.empty() && std::all_of(axes.begin(), axes.end(), [](const AxisSpec& a) {
    return a.kind == AxisKind::Periodic;
  });
}

std::optional<int> BoundaryConfig::open_axis() const noexcept {
  for (int i = 0; i < dim(); ++i)
    if (axes[i].kind == AxisKind::Open) return i;
  return std::nullopt;
}

double BoundaryConfig::length(int axis) const {
  const auto& a = axes.at(static_cast<std::size_t>(axis));
  if (!a.length) {
    throw Error(Issue{ErrorCode::MissingLength, "axes[" + std::to_string(axis) + "].length",
                      "axis has no length"});
  }
  return *a.length;
}

double BoundaryConfig::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i)
    if (axes[i].kind != AxisKind::Open) v *= length(i);
  return v;
}

BoundaryConfig BoundaryConfig::uniform(AxisKind kind, double L, int n) {
  BoundaryConfig bc;
  for (int i = 0; i < n; ++i) bc.axes.push_back({kind, kind == AxisKind::Open ? std::nullopt : std::optional<double>(L)});
  return bc;
}

double default_epsilon(const BoundaryConfig& bc) {
  double L = 0.0;
  for (const auto& a : bc.axes)
    if (a.kind != AxisKind::Open && a.length) L = std::max(L, *a.length);
  return 1e-6 * (L > 0.0 ? L : 1.0);
}

int CheckedConfig::quadrature_nodes() const noexcept {
  if (opts.quadrature_nodes > 0) return opts.quadrature_nodes;
  return dim() == 1 ? 64 : 8;
}

CheckedConfig validate_config(const BoundaryConfig& bc, const CommutatorOptions& opts) {
  std::vector<Issue> issues;
  const int n = bc.dim();
  if (n < 1 || n > kMaxDim) {
    issues.push_back({ErrorCode::UnsupportedDimension, "axes",
                      "spatial dimension must be between 1 and " + std::to_string(kMaxDim)});
  }

  int open_count = 0;
  for (int i = 0; i < n; ++i) {
    const auto& a = bc.axes[i];
    const std::string field = "axes[" + std::to_string(i) + "]";
    if (a.kind == AxisKind::Open) {
      ++open_count;
      if (a.length) issues.push_back({ErrorCode::BadOption, field + ".length", "open axis takes no length"});
      continue;
    }
    if (!a.length) {
      issues.push_back({ErrorCode::MissingLength, field + ".length", "length is required"});
    } else if (!std::isfinite(*a.length)) {
      issues.push_back({ErrorCode::NonFinite, field + ".length", "length must be finite"});
    } else if (*a.length <= 0.0) {
      issues.push_back({ErrorCode::NonPositiveLength, field + ".length", "length must be positive"});
    }
  }
  if (open_count > 1) {
    issues.push_back({ErrorCode::MultipleOpenAxes, "axes", "at most one open axis is allowed"});
  }
  if (open_count == 1 && n < 2) {
    issues.push_back({ErrorCode::UnsupportedBoundary, "axes",
                      "an open axis needs at least one compact axis"});
  }

  if (opts.epsilon && !(std::isfinite(*opts.epsilon) && *opts.epsilon > 0.0)) {
    issues.push_back({ErrorCode::BadOption, "options.epsilon", "epsilon must be positive"});
  }
  if (!(std::isfinite(opts.pv_epsilon) && opts.pv_epsilon > 0.0)) {
    issues.push_back({ErrorCode::BadOption, "options.pv_epsilon", "pv_epsilon must be positive"});
  }
  if (!(std::isfinite(opts.open_cutoff) && opts.open_cutoff > opts.pv_epsilon)) {
    issues.push_back({ErrorCode::BadCutoff, "options.open_cutoff",
                      "open_cutoff must exceed pv_epsilon"});
  }
  if (!(opts.quadrature_tolerance > 0.0)) {
    issues.push_back({ErrorCode::BadOption, "options.quadrature_tolerance", "must be positive"});
  }
  if (opts.quadrature_nodes < 0) {
    issues.push_back({ErrorCode::BadOption, "options.quadrature_nodes", "must be nonnegative"});
  }

  CheckedConfig out;
  if (opts.cutoff.empty()) {
    issues.push_back({ErrorCode::BadCutoff, "options.cutoff", "at least one cutoff is required"});
  } else if (opts.cutoff.size() != 1 && static_cast<int>(opts.cutoff.size()) != n) {
    issues.push_back({ErrorCode::BadCutoff, "options.cutoff",
                      "give one cutoff or one per axis"});
  } else {
    for (int i = 0; i < n; ++i) {
      const int c = opts.cutoff.size() == 1 ? opts.cutoff[0] : opts.cutoff[i];
      const bool open = bc.axes[i].kind == AxisKind::Open;
      if (!open && c < 1) {
        issues.push_back({ErrorCode::BadCutoff, "options.cutoff[" + std::to_string(i) + "]",
                          "cutoff must be at least 1"});
      }
      out.cutoff.push_back(open ? 0 : c);
    }
  }

  if (!issues.empty()) throw Error(std::move(issues));

  out.bc = bc;
  out.opts = opts;
  out.epsilon = opts.epsilon ? *opts.epsilon : default_epsilon(bc);
  out.opts.epsilon = out.epsilon;
  out.has_zero_mode = bc.has_zero_mode();
  return out;
}

void validate_detector(const DetectorSpec& d, int dim, std::string_view field) {
  std::vector<Issue> issues;
  const std::string f(field);
  if (static_cast<int>(d.center.size()) != dim) {
    issues.push_back({ErrorCode::DimensionMismatch, f + ".center",
                      "expected " + std::to_string(dim) + " coordinates"});
  }
  for (double c : d.center)
    if (!std::isfinite(c)) issues.push_back({ErrorCode::NonFinite, f + ".center", "non-finite coordinate"});
  if (!(std::isfinite(d.sigma) && d.sigma >= 0.0))
    issues.push_back({ErrorCode::InvalidProfile, f + ".sigma", "sigma must be nonnegative"});
  if (!(std::isfinite(d.t_on) && std::isfinite(d.t_off)))
    issues.push_back({ErrorCode::NonFinite, f + ".t_on", "switching times must be finite"});
  else if (d.t_on > d.t_off)
    issues.push_back({ErrorCode::InvalidProfile, f + ".t_off", "t_on must not exceed t_off"});
  if (d.switch_height && !std::isfinite(*d.switch_height))
    issues.push_back({ErrorCode::NonFinite, f + ".switch_height", "non-finite height"});
  if (d.smear_height && !std::isfinite(*d.smear_height))
    issues.push_back({ErrorCode::NonFinite, f + ".smear_height", "non-finite height"});
  if (!issues.empty()) throw Error(std::move(issues));
}

void require_dim(const SpacetimeEvent& ev, int dim) {
  if (ev.dim() != dim) {
    throw Error(Issue{ErrorCode::DimensionMismatch, "event.x",
                      "event has " + std::to_string(ev.dim()) + " coordinates, expected " +
                          std::to_string(dim)});
  }
  if (!std::isfinite(ev.t) ||
      !std::all_of(ev.x.begin(), ev.x.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Issue{ErrorCode::NonFinite, "event", "coordinates must be finite"});
  }
}

}  // namespace causal
