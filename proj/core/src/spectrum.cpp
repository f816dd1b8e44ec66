#include "causal/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "causal/error.hpp"

namespace causal {

using std::numbers::pi;

double axis_wavenumber(AxisKind kind, double L, int i) {
  switch (kind) {
    case AxisKind::Periodic: return 2.0 * pi * i / L;
    case AxisKind::Neumann:
    case AxisKind::Dirichlet: return pi * i / L;
    case AxisKind::Open: break;
  }
  throw Error(Issue{ErrorCode::UnsupportedBoundary, "axis", "open axis has a continuous spectrum"});
}

std::pair<int, int> axis_index_range(AxisKind kind, int cutoff) {
  switch (kind) {
    case AxisKind::Periodic: return {-cutoff, cutoff};
    case AxisKind::Neumann: return {0, cutoff};
    case AxisKind::Dirichlet: return {1, cutoff};
    case AxisKind::Open: break;
  }
  throw Error(Issue{ErrorCode::UnsupportedBoundary, "axis", "open axis has a continuous spectrum"});
}

double axis_norm_length(AxisKind kind, double L, int i) {
  if (kind == AxisKind::Periodic) return L;
  if (kind == AxisKind::Neumann && i == 0) return L;
  return 0.5 * L;
}

namespace {

void require_discrete(const BoundaryConfig& bc) {
  if (bc.open_axis()) {
    throw Error(Issue{ErrorCode::UnsupportedBoundary, "axes",
                      "modes along an open axis are integrated, not enumerated"});
  }
}

double mode_norm_unchecked(const BoundaryConfig& bc, const Mode& m) {
  double ell = 1.0;
  for (int l = 0; l < m.dim; ++l)
    ell *= axis_norm_length(bc.axes[l].kind, *bc.axes[l].length, m.index[l]);
  return 1.0 / std::sqrt(2.0 * m.omega * ell);
}

}  // namespace

std::size_t mode_count(const CheckedConfig& cfg) {
  require_discrete(cfg.bc);
  std::size_t count = 1;
  for (int l = 0; l < cfg.dim(); ++l) {
    auto [lo, hi] = axis_index_range(cfg.bc.axes[l].kind, cfg.cutoff[l]);
    count *= static_cast<std::size_t>(hi - lo + 1);
  }
  return cfg.has_zero_mode ? count - 1 : count;
}

std::vector<Mode> enumerate_modes(const CheckedConfig& cfg) {
  require_discrete(cfg.bc);
  const int n = cfg.dim();
  std::array<int, kMaxDim> lo{}, hi{};
  for (int l = 0; l < n; ++l) {
    std::tie(lo[l], hi[l]) = axis_index_range(cfg.bc.axes[l].kind, cfg.cutoff[l]);
  }

  std::vector<Mode> modes;
  modes.reserve(mode_count(cfg));
  std::array<int, kMaxDim> idx = lo;
  for (;;) {
    Mode m;
    m.dim = n;
    double k2 = 0.0;
    for (int l = 0; l < n; ++l) {
      m.index[l] = idx[l];
      m.k[l] = axis_wavenumber(cfg.bc.axes[l].kind, *cfg.bc.axes[l].length, idx[l]);
      k2 += m.k[l] * m.k[l];
    }
    m.omega = std::sqrt(k2);
    if (m.omega > 0.0) {
      m.norm = mode_norm_unchecked(cfg.bc, m);
      modes.push_back(m);
    }
    // Odometer increment, last axis fastest.
    int l = n - 1;
    while (l >= 0 && idx[l] == hi[l]) {
      idx[l] = lo[l];
      --l;
    }
    if (l < 0) break;
    ++idx[l];
  }
  return modes;
}

double mode_norm(const BoundaryConfig& bc, const Mode& mode) {
  require_discrete(bc);
  if (mode.dim != bc.dim()) {
    throw Error(Issue{ErrorCode::DimensionMismatch, "mode", "mode and boundary dimensions differ"});
  }
  if (!(mode.omega > 0.0)) {
    throw Error(Issue{ErrorCode::ZeroFrequency, "mode.omega",
                      "the zero mode has no oscillator normalisation"});
  }
  return mode_norm_unchecked(bc, mode);
}

Complex eval_mode(const BoundaryConfig& bc, const Mode& mode, const SpacetimeEvent& ev) {
  require_dim(ev, bc.dim());
  if (mode.dim != bc.dim()) {
    throw Error(Issue{ErrorCode::DimensionMismatch, "mode", "mode and boundary dimensions differ"});
  }
  Complex u = std::polar(mode.norm, -mode.omega * ev.t);
  for (int l = 0; l < mode.dim; ++l) {
    const double kx = mode.k[l] * ev.x[l];
    switch (bc.axes[l].kind) {
      case AxisKind::Periodic: u *= std::polar(1.0, kx); break;
      case AxisKind::Neumann: u *= std::cos(kx); break;
      case AxisKind::Dirichlet: u *= std::sin(kx); break;
      case AxisKind::Open:
        throw Error(Issue{ErrorCode::UnsupportedBoundary, "axes", "open axis in eval_mode"});
    }
  }
  return u;
}

double lanczos_factor(const Mode& mode, const std::vector<int>& cutoff) {
  double s = 1.0;
  for (int l = 0; l < mode.dim; ++l) {
    if (mode.index[l] == 0) continue;
    const double x = pi * mode.index[l] / (cutoff[l] + 1.0);
    s *= std::sin(x) / x;
  }
  return s;
}

}  // namespace causal
