#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "causal/closed_form.hpp"
#include "causal/einstein_cylinder.hpp"
#include "causal/types.hpp"

namespace causal {

enum class Method { ClosedForm, ModeSum, ContinuumIntegral };

std::string_view to_string(Method m) noexcept;

struct CommutatorParts {
  Complex osc;
  Complex zero_mode;
};

struct CommutatorDiagnostics {
  Method method = Method::ModeSum;
  std::size_t modes_summed = 0;
  double epsilon_used = 0.0;
  /// For 1D closed forms: the integer n with value close to -i n / 2.
  std::optional<int> branch_index;
  bool lanczos = false;
  /// Quadrature error estimate (continuum integrals only).
  double error_estimate = 0.0;
};

/// value == parts.osc + parts.zero_mode.
struct CommutatorResult {
  Complex value;
  CommutatorParts parts;
  CommutatorDiagnostics diagnostics;
};

/// -i dt / (product of lengths). Throws NoZeroMode when the boundary has none.
Complex zero_mode_commutator(const BoundaryConfig& bc, double dt);

/// Truncated oscillator sum over a discrete spectrum, prepared once and
/// evaluated for any number of event pairs.
///
/// Each mode contributes N^2 (e^{-i w dt} G - c.c.) e^{-w eps}, with G the
/// product of spatial factors, so the result is purely imaginary and exactly
/// antisymmetric under a <-> b.
class ModeSum {
 public:
  explicit ModeSum(const CheckedConfig& cfg);

  Complex operator()(const SpacetimeEvent& a, const SpacetimeEvent& b) const;

  std::size_t size() const noexcept { return omega_.size(); }
  const CheckedConfig& config() const noexcept { return cfg_; }

 private:
  CheckedConfig cfg_;
  std::vector<double> omega_;
  std::vector<double> weight_;  // N^2 e^{-w eps} (times Lanczos sigma)
  std::vector<std::array<int, kMaxDim>> slot_;  // per-axis table offsets
  std::array<int, kMaxDim> lo_{};
  std::array<int, kMaxDim> width_{};
};

Complex osc_commutator_modesum(const CheckedConfig& cfg, const SpacetimeEvent& a,
                               const SpacetimeEvent& b);
Complex osc_commutator_modesum(const BoundaryConfig& bc, const SpacetimeEvent& a,
                               const SpacetimeEvent& b, const CommutatorOptions& opts);

/// Full commutator evaluator. The oscillator part comes from the closed form
/// for 1D periodic and Neumann intervals (unless opts.closed_form is off), from
/// the continuum integral when an axis is open, and from ModeSum otherwise.
class CommutatorEngine {
 public:
  explicit CommutatorEngine(CheckedConfig cfg);
  CommutatorEngine(const BoundaryConfig& bc, const CommutatorOptions& opts);

  CommutatorResult operator()(const SpacetimeEvent& a, const SpacetimeEvent& b) const;

  const CheckedConfig& config() const noexcept { return cfg_; }
  Method method() const noexcept { return method_; }

 private:
  CheckedConfig cfg_;
  Method method_;
  std::shared_ptr<const ModeSum> modes_;
};

CommutatorResult full_commutator(const CheckedConfig& cfg, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b);
CommutatorResult full_commutator(const BoundaryConfig& bc, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b, const CommutatorOptions& opts);

/// Im of the full commutator along dt for events (dt, dx) and (0, 0) on a
/// 3-torus.
struct HuygensProfile {
  std::vector<double> dt;
  std::vector<double> im_value;
  std::vector<double> im_osc;
  /// Distances from 0 to the images of dx that lie within the dt range.
  std::vector<double> null_radii;
  /// Half-width of the window around each null radius counted as near-null.
  double guard = 0.0;
  double near_null_peak = 0.0;
  /// Median |Im| over timelike points outside every near-null window.
  double interior_median = 0.0;
  /// Largest |Im| outside every near-null window (residual Gibbs ripple).
  double gibbs_envelope = 0.0;
  bool lanczos = false;
  std::vector<int> cutoff;
};

/// Throws UnsupportedBoundary unless the boundary is an all-periodic 3-torus.
HuygensProfile huygens_profile(const CheckedConfig& cfg, const std::vector<double>& dx,
                               std::span<const double> dts);

}  // namespace causal
