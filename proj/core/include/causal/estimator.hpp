#pragma once

#include <array>
#include <span>
#include <vector>

#include "causal/commutator.hpp"
#include "causal/types.hpp"

namespace causal {

enum class ProfileKind { TopHat, Delta };

/// Compactly supported 1D weight: height on [lo, hi] for a top-hat, or a point
/// mass `height` at lo == hi for a delta.
struct Profile {
  ProfileKind kind = ProfileKind::Delta;
  double lo = 0.0;
  double hi = 0.0;
  double height = 1.0;

  static Profile top_hat(double lo, double hi, double height);
  static Profile delta(double at, double mass);

  double mass() const noexcept;
  /// Density value; zero everywhere for a delta.
  double operator()(double x) const noexcept;
};

/// chi(t): top-hat on [t_on, t_off] or a delta at t_on.
Profile switching_profile(const DetectorSpec& d);

/// One axis of F(x): top-hat of width sigma about the centre, or a delta.
/// The overall smearing height is carried by the first axis.
Profile smearing_profile(const DetectorSpec& d, int axis, int dim);

/// Density of X - Y for X ~ p and Y ~ q (unnormalised): a trapezoid for two
/// top-hats, a box when one side is a delta, a point mass for two deltas.
struct DifferenceKernel {
  bool point = false;
  std::array<double, 4> knots{};  // k0 <= k1 <= k2 <= k3
  double plateau = 0.0;           // value on [k1, k2]; the mass when point
  double operator()(double s) const noexcept;
  double lo() const noexcept { return knots[0]; }
  double hi() const noexcept { return knots[3]; }
  double mass() const noexcept;
};

DifferenceKernel difference_kernel(const Profile& p, const Profile& q);

/// Supports do not overlap: A switches off strictly before B switches on, and
/// the smearing boxes are separated along at least one axis (minimal-image
/// distance on periodic axes).
bool check_nonoverlap(const BoundaryConfig& bc, const DetectorSpec& A, const DetectorSpec& B);

struct SmearedResult {
  Complex value;
  double error = 0.0;
  long evaluations = 0;
};

struct EstimatorResult {
  double value = 0.0;  // |integral|
  Complex integral;
  double error = 0.0;
  long evaluations = 0;
};

/// Smeared commutator and estimator on one boundary configuration. Holds the
/// commutator engine so repeated evaluations reuse the prepared spectrum.
class Estimator {
 public:
  explicit Estimator(CheckedConfig cfg);
  Estimator(const BoundaryConfig& bc, const CommutatorOptions& opts);

  /// Smeared commutator C(t, x_A, t', x_B) with A's profile at time t and B's
  /// at time t'.
  SmearedResult smeared(const DetectorSpec& A, const DetectorSpec& B, double t, double tp) const;

  /// |int int chi_A(t) chi_B(t') C(t, t') dt dt'|. Throws OverlappingSupports.
  EstimatorResult operator()(const DetectorSpec& A, const DetectorSpec& B) const;

  /// Points in s = t - t' where C(s, 0) may fail to be smooth, restricted to
  /// (lo, hi). Empty when no closed-form light-cone structure is known.
  std::vector<double> time_breakpoints(const DetectorSpec& A, const DetectorSpec& B, double lo,
                                       double hi) const;

  const CommutatorEngine& engine() const noexcept { return engine_; }
  const CheckedConfig& config() const noexcept { return engine_.config(); }

 private:
  SmearedResult smeared_at_order(const DetectorSpec& A, const DetectorSpec& B, double t,
                                 double tp, int order) const;

  CommutatorEngine engine_;
};

SmearedResult smeared_commutator(const BoundaryConfig& bc, const DetectorSpec& A,
                                 const DetectorSpec& B, double t, double tp,
                                 const CommutatorOptions& opts);

EstimatorResult estimator_E(const BoundaryConfig& bc, const DetectorSpec& A, const DetectorSpec& B,
                            const CommutatorOptions& opts);

/// Oscillator-only estimator for delta-switched pointlike detectors on 1D
/// periodic intervals, scanned over L.
struct EstimatorVsL {
  std::vector<double> L;
  std::vector<double> dt;
  /// curves[i][j] = E(dt[j]; L[i])
  std::vector<std::vector<double>> curves;
  double dt_spacelike = 0.0;
  double dt_timelike = 0.0;
  std::vector<double> spacelike;
  std::vector<double> timelike;
  /// Least-squares slope of log E against log L on the spacelike branch.
  double fit_exponent = 0.0;
};

EstimatorVsL estimator_vs_L(std::span<const double> Ls, double dx, std::span<const double> dts,
                            double dt_spacelike, double dt_timelike,
                            const CommutatorOptions& opts);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace causal
