#include "causal/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "causal/error.hpp"
#include "causal/parallel.hpp"
#include "causal/reduction.hpp"
#include "causal/spectrum.hpp"

namespace causal {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::ModeSum: return "mode_sum";
    case Method::ContinuumIntegral: return "continuum_integral";
  }
  return "unknown";
}

Complex zero_mode_commutator(const BoundaryConfig& bc, double dt) {
  if (!bc.has_zero_mode()) {
    throw Error(Issue{ErrorCode::NoZeroMode, "axes",
                      "a zero mode needs every axis periodic or Neumann"});
  }
  return Complex(0.0, -dt / bc.volume());
}

ModeSum::ModeSum(const CheckedConfig& cfg) : cfg_(cfg) {
  const auto modes = enumerate_modes(cfg_);
  const int n = cfg_.dim();
  for (int l = 0; l < n; ++l) {
    auto [lo, hi] = axis_index_range(cfg_.bc.axes[l].kind, cfg_.cutoff[l]);
    lo_[l] = lo;
    width_[l] = hi - lo + 1;
  }
  omega_.reserve(modes.size());
  weight_.reserve(modes.size());
  slot_.reserve(modes.size());
  for (const auto& m : modes) {
    double w = m.norm * m.norm * std::exp(-m.omega * cfg_.epsilon);
    if (cfg_.opts.lanczos_sigma) w *= lanczos_factor(m, cfg_.cutoff);
    std::array<int, kMaxDim> s{};
    for (int l = 0; l < n; ++l) s[l] = m.index[l] - lo_[l];
    omega_.push_back(m.omega);
    weight_.push_back(w);
    slot_.push_back(s);
  }
}

Complex ModeSum::operator()(const SpacetimeEvent& a, const SpacetimeEvent& b) const {
  const int n = cfg_.dim();
  require_dim(a, n);
  require_dim(b, n);

  // Spatial factor tables, one per axis, indexed by slot.
  std::array<std::vector<double>, kMaxDim> gr, gi;
  for (int l = 0; l < n; ++l) {
    const auto kind = cfg_.bc.axes[l].kind;
    const double L = *cfg_.bc.axes[l].length;
    gr[l].resize(width_[l]);
    gi[l].assign(width_[l], 0.0);
    const double dx = a.x[l] - b.x[l];
    for (int j = 0; j < width_[l]; ++j) {
      const double k = axis_wavenumber(kind, L, lo_[l] + j);
      switch (kind) {
        case AxisKind::Periodic:
          gr[l][j] = std::cos(k * dx);
          gi[l][j] = std::sin(k * dx);
          break;
        case AxisKind::Neumann:
          gr[l][j] = std::cos(k * a.x[l]) * std::cos(k * b.x[l]);
          break;
        case AxisKind::Dirichlet:
          gr[l][j] = std::sin(k * a.x[l]) * std::sin(k * b.x[l]);
          break;
        case AxisKind::Open:
          break;
      }
    }
  }

  const double dt = a.t - b.t;
  auto term = [&](std::size_t i) {
    const auto& s = slot_[i];
    double re = gr[0][s[0]], im = gi[0][s[0]];
    for (int l = 1; l < n; ++l) {
      const double cr = gr[l][s[l]], ci = gi[l][s[l]];
      const double r2 = re * cr - im * ci;
      const double i2 = re * ci + im * cr;
      re = r2;
      im = i2;
    }
    const double phase = omega_[i] * dt;
    return weight_[i] * (std::cos(phase) * im - std::sin(phase) * re);
  };
  const double sum = reduce_sum(omega_.size(), term, cfg_.opts.summation);
  return Complex(0.0, 2.0 * sum);
}

Complex osc_commutator_modesum(const CheckedConfig& cfg, const SpacetimeEvent& a,
                               const SpacetimeEvent& b) {
  return ModeSum(cfg)(a, b);
}

Complex osc_commutator_modesum(const BoundaryConfig& bc, const SpacetimeEvent& a,
                               const SpacetimeEvent& b, const CommutatorOptions& opts) {
  return ModeSum(validate_config(bc, opts))(a, b);
}

namespace {

Method pick_method(const CheckedConfig& cfg) {
  if (cfg.bc.open_axis()) return Method::ContinuumIntegral;
  const auto kind = cfg.bc.axes[0].kind;
  if (cfg.dim() == 1 && cfg.opts.closed_form &&
      (kind == AxisKind::Periodic || kind == AxisKind::Neumann))
    return Method::ClosedForm;
  return Method::ModeSum;
}

}  // namespace

CommutatorEngine::CommutatorEngine(CheckedConfig cfg)
    : cfg_(std::move(cfg)), method_(pick_method(cfg_)) {
  if (method_ == Method::ModeSum) modes_ = std::make_shared<const ModeSum>(cfg_);
}

CommutatorEngine::CommutatorEngine(const BoundaryConfig& bc, const CommutatorOptions& opts)
    : CommutatorEngine(validate_config(bc, opts)) {}

CommutatorResult CommutatorEngine::operator()(const SpacetimeEvent& a,
                                              const SpacetimeEvent& b) const {
  require_dim(a, cfg_.dim());
  require_dim(b, cfg_.dim());
  CommutatorResult r;
  auto& d = r.diagnostics;
  d.method = method_;
  d.epsilon_used = cfg_.epsilon;
  d.lanczos = cfg_.opts.lanczos_sigma && method_ != Method::ClosedForm;

  switch (method_) {
    case Method::ClosedForm:
      r.parts.osc = osc_commutator_closed_1d(cfg_.bc.axes[0].kind, *cfg_.bc.axes[0].length, a, b,
                                             cfg_.epsilon);
      break;
    case Method::ModeSum:
      r.parts.osc = (*modes_)(a, b);
      d.modes_summed = modes_->size();
      break;
    case Method::ContinuumIntegral: {
      const auto c = osc_commutator_continuum(cfg_, a, b);
      r.parts.osc = c.value;
      d.modes_summed = c.compact_modes;
      d.error_estimate = c.error;
      break;
    }
  }

  if (cfg_.opts.include_zero_mode && cfg_.has_zero_mode)
    r.parts.zero_mode = zero_mode_commutator(cfg_.bc, a.t - b.t);
  r.value = r.parts.osc + r.parts.zero_mode;

  if (method_ == Method::ClosedForm) {
    const double x = -2.0 * r.value.imag();
    const double n = std::round(x);
    if (std::abs(x - n) < 1e-4) d.branch_index = static_cast<int>(n);
  }
  return r;
}

CommutatorResult full_commutator(const CheckedConfig& cfg, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b) {
  return CommutatorEngine(cfg)(a, b);
}

CommutatorResult full_commutator(const BoundaryConfig& bc, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b, const CommutatorOptions& opts) {
  return CommutatorEngine(validate_config(bc, opts))(a, b);
}

HuygensProfile huygens_profile(const CheckedConfig& cfg, const std::vector<double>& dx,
                               std::span<const double> dts) {
  if (cfg.dim() != 3 || !cfg.bc.translation_invariant()) {
    throw Error(Issue{ErrorCode::UnsupportedBoundary, "axes",
                      "the Huygens profile is defined on an all-periodic 3-torus"});
  }
  if (static_cast<int>(dx.size()) != 3) {
    throw Error(Issue{ErrorCode::DimensionMismatch, "dx", "expected 3 coordinates"});
  }

  HuygensProfile p;
  p.dt.assign(dts.begin(), dts.end());
  p.lanczos = cfg.opts.lanczos_sigma;
  p.cutoff = cfg.cutoff;
  p.im_value.resize(p.dt.size());
  p.im_osc.resize(p.dt.size());

  const CommutatorEngine engine(cfg);
  const SpacetimeEvent origin{0.0, {0.0, 0.0, 0.0}};
  parallel_for(p.dt.size(), [&](std::size_t i) {
    const auto r = engine(SpacetimeEvent{p.dt[i], dx}, origin);
    p.im_value[i] = r.value.imag();
    p.im_osc[i] = r.parts.osc.imag();
  });

  double max_dt = 0.0;
  for (double t : p.dt) max_dt = std::max(max_dt, std::abs(t));
  for (int l = 0; l < 3; ++l)
    p.guard = std::max(p.guard, 2.0 * *cfg.bc.axes[l].length / cfg.cutoff[l]);

  // Image distances |dx + m L| that the sampled dt range can reach.
  std::array<int, 3> reach{};
  for (int l = 0; l < 3; ++l)
    reach[l] = static_cast<int>(std::ceil((max_dt + p.guard) / *cfg.bc.axes[l].length)) + 1;
  for (int m0 = -reach[0]; m0 <= reach[0]; ++m0)
    for (int m1 = -reach[1]; m1 <= reach[1]; ++m1)
      for (int m2 = -reach[2]; m2 <= reach[2]; ++m2) {
        const std::array<int, 3> m{m0, m1, m2};
        double r2 = 0.0;
        for (int l = 0; l < 3; ++l) {
          const double c = dx[l] + m[l] * *cfg.bc.axes[l].length;
          r2 += c * c;
        }
        const double r = std::sqrt(r2);
        if (r <= max_dt + p.guard) p.null_radii.push_back(r);
      }
  std::sort(p.null_radii.begin(), p.null_radii.end());
  p.null_radii.erase(std::unique(p.null_radii.begin(), p.null_radii.end(),
                                 [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                     p.null_radii.end());

  const double first = p.null_radii.empty() ? max_dt + 1.0 : p.null_radii.front();
  std::vector<double> interior;
  for (std::size_t i = 0; i < p.dt.size(); ++i) {
    const double t = std::abs(p.dt[i]);
    const double v = std::abs(p.im_value[i]);
    const bool near = std::any_of(p.null_radii.begin(), p.null_radii.end(),
                                  [&](double r) { return std::abs(t - r) <= p.guard; });
    if (near) {
      p.near_null_peak = std::max(p.near_null_peak, v);
    } else {
      p.gibbs_envelope = std::max(p.gibbs_envelope, v);
      if (t > first) interior.push_back(v);
    }
  }
  if (!interior.empty()) {
    const auto mid = interior.begin() + static_cast<std::ptrdiff_t>(interior.size() / 2);
    std::nth_element(interior.begin(), mid, interior.end());
    p.interior_median = *mid;
    if (interior.size() % 2 == 0) {
      const double below = *std::max_element(interior.begin(), mid);
      p.interior_median = 0.5 * (p.interior_median + below);
    }
  }
  return p;
}

}  // namespace causal
