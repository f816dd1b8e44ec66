#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "causal/types.hpp"

namespace causal {

/// One Fock oscillator: u_I(t, x) = N_I e^{-i omega t} prod_l f_l(x_l), with
/// f_l = e^{i k x} (periodic), cos(k x) (Neumann) or sin(k x) (Dirichlet).
struct Mode {
  std::array<int, kMaxDim> index{};
  std::array<double, kMaxDim> k{};
  int dim = 0;
  double omega = 0.0;
  double norm = 0.0;
};

/// Wave number of index i on one axis: 2 pi i / L (periodic), pi i / L otherwise.
double axis_wavenumber(AxisKind kind, double L, int i);

/// Inclusive index range for one axis at cutoff N: [-N, N] periodic,
/// [0, N] Neumann, [1, N] Dirichlet.
std::pair<int, int> axis_index_range(AxisKind kind, int cutoff);

/// Effective length entering |N_I|^2 = 1 / (2 omega prod_l ell_l):
/// L for periodic axes and for index 0 on a Neumann axis, L / 2 otherwise.
double axis_norm_length(AxisKind kind, double L, int i);

/// All oscillator modes within the per-axis cutoffs, in lexicographic order of
/// the multi-index (first axis most significant, ascending integers). The
/// all-zero index is excluded when the configuration has a zero mode; Dirichlet
/// index 0 never appears. Open axes are not enumerable and raise
/// UnsupportedBoundary.
std::vector<Mode> enumerate_modes(const CheckedConfig& cfg);

/// Number of modes enumerate_modes would return.
std::size_t mode_count(const CheckedConfig& cfg);

/// Klein-Gordon normalisation of a mode. Throws ZeroFrequency for omega == 0.
double mode_norm(const BoundaryConfig& bc, const Mode& mode);

/// u_I evaluated at an event. Throws DimensionMismatch.
Complex eval_mode(const BoundaryConfig& bc, const Mode& mode, const SpacetimeEvent& ev);

/// Product of per-axis Lanczos sigma factors sinc(pi i_l / (N_l + 1)).
double lanczos_factor(const Mode& mode, const std::vector<int>& cutoff);

}  // namespace causal
