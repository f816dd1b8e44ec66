#pragma once

#include <cstddef>

#include "causal/types.hpp"

namespace causal {

struct ContinuumResult {
  Complex value;
  double error = 0.0;
  int panels = 0;
  long evaluations = 0;
  std::size_t compact_modes = 0;
};

/// Oscillator commutator with one open axis: sum over the compact indices of
/// the integral over the open wave number l in [-open_cutoff, -pv_epsilon] and
/// [pv_epsilon, open_cutoff]. The +l and -l contributions are folded into one
/// real integrand on [pv_epsilon, open_cutoff] before adaptive quadrature.
///
/// Throws QuadratureError when refinement is exhausted.
ContinuumResult osc_commutator_continuum(const CheckedConfig& cfg, const SpacetimeEvent& a,
                                         const SpacetimeEvent& b);

/// 2+1 cylinder: periodic axis of length L first, open axis second.
Complex einstein_cylinder_commutator(double L, const SpacetimeEvent& a, const SpacetimeEvent& b,
                                     const CommutatorOptions& opts);

}  // namespace causal
