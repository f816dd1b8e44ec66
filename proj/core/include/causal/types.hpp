#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace causal {

using Complex = std::complex<double>;

/// Largest supported number of spatial dimensions.
inline constexpr int kMaxDim = 3;

/// An event (t, x) in natural units c = hbar = 1.
struct SpacetimeEvent {
  double t = 0.0;
  std::vector<double> x;

  int dim() const noexcept { return static_cast<int>(x.size()); }
};

enum class AxisKind { Periodic, Neumann, Dirichlet, Open };

std::string_view to_string(AxisKind kind) noexcept;
std::optional<AxisKind> parse_axis_kind(std::string_view text) noexcept;

struct AxisSpec {
  AxisKind kind = AxisKind::Periodic;
  std::optional<double> length;  // absent for Open

  static AxisSpec periodic(double L) { return {AxisKind::Periodic, L}; }
  static AxisSpec neumann(double L) { return {AxisKind::Neumann, L}; }
  static AxisSpec dirichlet(double L) { return {AxisKind::Dirichlet, L}; }
  static AxisSpec open() { return {AxisKind::Open, std::nullopt}; }
};

/// Per-axis boundary conditions; fixes the Klein-Gordon mode spectrum.
struct BoundaryConfig {
  std::vector<AxisSpec> axes;

  int dim() const noexcept { return static_cast<int>(axes.size()); }

  /// The constant spatial eigenfunction is admissible on every axis.
  bool has_zero_mode() const noexcept;

  /// Every axis periodic: the commutator depends on x - x' only.
  bool translation_invariant() const noexcept;

  std::optional<int> open_axis() const noexcept;

  /// Product of the discrete-axis lengths.
  double volume() const;

  double length(int axis) const;

  static BoundaryConfig uniform(AxisKind kind, double L, int n);
};

enum class Summation { PairwiseDeterministic, SerialCompensated };

std::string_view to_string(Summation s) noexcept;
std::optional<Summation> parse_summation(std::string_view text) noexcept;

struct CommutatorOptions {
  /// i-epsilon regulator; defaults to 1e-6 times the largest discrete length.
  std::optional<double> epsilon;
  /// Per-axis index cutoff for discrete axes. A single entry applies to every
  /// axis. Entries for Open axes are ignored.
  std::vector<int> cutoff{64};
  /// Continuum cutoff (wave number) for the Open axis.
  double open_cutoff = 50.0;
  bool include_zero_mode = true;
  /// Half-width of the excluded interval around l = 0 on the Open axis.
  double pv_epsilon = 1e-3;
  Summation summation = Summation::PairwiseDeterministic;
  /// Multiply each mode by Lanczos sigma factors sinc(i / (N + 1)).
  bool lanczos_sigma = false;
  /// Use the all-mode closed form on 1D periodic and Neumann intervals.
  bool closed_form = true;
  /// Gauss-Legendre nodes per panel for smearing and switching integrals.
  /// Zero picks 64 in one dimension and 8 per axis otherwise.
  int quadrature_nodes = 0;
  /// Relative tolerance for adaptive quadrature (Open axis).
  double quadrature_tolerance = 1e-10;
};

/// Validated boundary and options with every default resolved.
struct CheckedConfig {
  BoundaryConfig bc;
  CommutatorOptions opts;
  double epsilon = 0.0;
  std::vector<int> cutoff;  // one per axis; 0 for Open
  bool has_zero_mode = false;

  int dim() const noexcept { return bc.dim(); }
  int quadrature_nodes() const noexcept;
};

/// Throws Error listing every violated invariant.
CheckedConfig validate_config(const BoundaryConfig& bc, const CommutatorOptions& opts);

double default_epsilon(const BoundaryConfig& bc);

/// One Unruh-DeWitt detector.
///
/// `t_on == t_off` encodes delta switching at that instant; `sigma == 0` is a
/// pointlike detector. Heights default to the unit-mass top-hat values 1/delta
/// and 1/sigma; for delta profiles the height is the mass of the delta.
struct DetectorSpec {
  std::vector<double> center;
  double sigma = 0.0;
  double t_on = 0.0;
  double t_off = 0.0;
  double omega = 0.0;
  double coupling = 1.0;
  std::optional<double> switch_height;
  std::optional<double> smear_height;

  bool delta_switching() const noexcept { return t_on == t_off; }
  bool pointlike() const noexcept { return sigma == 0.0; }
  double switch_mid() const noexcept { return 0.5 * (t_on + t_off); }
};

/// Throws Error(InvalidProfile / DimensionMismatch / NonFinite).
void validate_detector(const DetectorSpec& d, int dim, std::string_view field = "detector");

void require_dim(const SpacetimeEvent& ev, int dim);

}  // namespace causal
