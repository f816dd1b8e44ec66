#include "causal/einstein_cylinder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "causal/error.hpp"
#include "causal/quadrature.hpp"
#include "causal/spectrum.hpp"

namespace causal {

using std::numbers::pi;

namespace {

struct CompactMode {
  double k2;
  double coef;  // sigma / (2 V 2 pi), the 1/omega is applied per l
  double gr, gi;
};

std::vector<CompactMode> compact_modes(const CheckedConfig& cfg, int open, const SpacetimeEvent& a,
                                       const SpacetimeEvent& b) {
  std::vector<int> axes;
  for (int l = 0; l < cfg.dim(); ++l)
    if (l != open) axes.push_back(l);

  std::vector<CompactMode> out;
  std::array<int, kMaxDim> lo{}, hi{}, idx{};
  for (std::size_t c = 0; c < axes.size(); ++c) {
    std::tie(lo[c], hi[c]) = axis_index_range(cfg.bc.axes[axes[c]].kind, cfg.cutoff[axes[c]]);
  }
  idx = lo;
  for (;;) {
    CompactMode m{0.0, 1.0 / (4.0 * pi), 1.0, 0.0};
    for (std::size_t c = 0; c < axes.size(); ++c) {
      const int l = axes[c];
      const auto kind = cfg.bc.axes[l].kind;
      const double L = *cfg.bc.axes[l].length;
      const double k = axis_wavenumber(kind, L, idx[c]);
      m.k2 += k * k;
      m.coef /= axis_norm_length(kind, L, idx[c]);
      if (cfg.opts.lanczos_sigma && idx[c] != 0) {
        const double x = pi * idx[c] / (cfg.cutoff[l] + 1.0);
        m.coef *= std::sin(x) / x;
      }
      double cr = 0.0, ci = 0.0;
      switch (kind) {
        case AxisKind::Periodic:
          cr = std::cos(k * (a.x[l] - b.x[l]));
          ci = std::sin(k * (a.x[l] - b.x[l]));
          break;
        case AxisKind::Neumann: cr = std::cos(k * a.x[l]) * std::cos(k * b.x[l]); break;
        case AxisKind::Dirichlet: cr = std::sin(k * a.x[l]) * std::sin(k * b.x[l]); break;
        case AxisKind::Open: break;
      }
      const double r2 = m.gr * cr - m.gi * ci;
      const double i2 = m.gr * ci + m.gi * cr;
      m.gr = r2;
      m.gi = i2;
    }
    out.push_back(m);
    int c = static_cast<int>(axes.size()) - 1;
    while (c >= 0 && idx[c] == hi[c]) {
      idx[c] = lo[c];
      --c;
    }
    if (c < 0) break;
    ++idx[c];
  }
  return out;
}

}  // namespace

ContinuumResult osc_commutator_continuum(const CheckedConfig& cfg, const SpacetimeEvent& a,
                                         const SpacetimeEvent& b) {
  const auto open = cfg.bc.open_axis();
  if (!open) {
    throw Error(Issue{ErrorCode::UnsupportedBoundary, "axes", "no open axis"});
  }
  require_dim(a, cfg.dim());
  require_dim(b, cfg.dim());

  const auto modes = compact_modes(cfg, *open, a, b);
  const double dt = a.t - b.t;
  const double dy = a.x[*open] - b.x[*open];
  const double eps = cfg.epsilon;

  auto integrand = [&](double l) {
    double sum = 0.0;
    for (const auto& m : modes) {
      const double w = std::sqrt(m.k2 + l * l);
      const double phase = w * dt;
      sum += m.coef / w * std::exp(-w * eps) * (std::cos(phase) * m.gi - std::sin(phase) * m.gr);
    }
    return 2.0 * std::cos(l * dy) * sum;
  };

  // Geometric grading away from the excluded interval, then panels no wider
  // than half an oscillation period.
  const double lo = cfg.opts.pv_epsilon;
  const double hi = cfg.opts.open_cutoff;
  std::vector<double> edges{lo};
  for (double e = 2.0 * lo; e < std::min(1.0, hi); e *= 2.0) edges.push_back(e);
  const double start = std::min(std::max(edges.back(), std::min(1.0, hi)), hi);
  if (start > edges.back()) edges.push_back(start);
  const double freq = std::abs(dt) + std::abs(dy);
  const double h = freq > 0.0 ? std::min(1.0, pi / freq) : 1.0;
  const int count = static_cast<int>(std::ceil((hi - start) / h));
  for (int i = 1; i <= count; ++i) edges.push_back(std::min(hi, start + (hi - start) * i / count));

  const double rel = cfg.opts.quadrature_tolerance;
  const auto q = adaptive_gauss_legendre<double>(integrand, edges, rel, 1e-3 * rel, 16, 20000,
                                                 "einstein_cylinder_commutator");
  ContinuumResult r;
  r.value = Complex(0.0, 2.0 * q.value);
  r.error = 2.0 * q.error;
  r.panels = q.panels;
  r.evaluations = q.evaluations;
  r.compact_modes = modes.size();
  return r;
}

Complex einstein_cylinder_commutator(double L, const SpacetimeEvent& a, const SpacetimeEvent& b,
                                     const CommutatorOptions& opts) {
  BoundaryConfig bc{{AxisSpec::periodic(L), AxisSpec::open()}};
  return osc_commutator_continuum(validate_config(bc, opts), a, b).value;
}

}  // namespace causal
