#pragma once

#include "causal/types.hpp"

namespace causal {

/// Oscillator commutator [phi(a), phi(b)] on a 1D interval, summed over all
/// modes in closed form.
///
/// Every separation s entering the expression is continued to s - i epsilon,
/// and each logarithm is taken on its principal branch. Periodic uses
/// s in {du, dv}; Neumann uses {u_a - v_b, dv, du, v_a - u_b}, with u = t - x
/// and v = t + x. The real part is epsilon / L for every event pair.
/// Throws UnsupportedBoundary for Dirichlet or Open, DimensionMismatch for
/// events that are not one-dimensional.
Complex osc_commutator_closed_1d(AxisKind kind, double L, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b, double epsilon);

/// Single-logarithm shortcut for a periodic interval: (i dt + epsilon) / L.
/// Only meaningful for spacelike pairs with |dx| / L >= 1/4 (dx reduced to the
/// nearest image); `valid` reports whether the pair satisfies that condition.
struct BranchShortcut {
  Complex value;
  bool valid = false;
};

BranchShortcut osc_commutator_branch_1d(double L, const SpacetimeEvent& a,
                                        const SpacetimeEvent& b, double epsilon);

/// log(1 - e^{iz}) on the principal branch, evaluated as
/// log(-2i sin(z/2) e^{iz/2}) after reducing Re z into [-pi, pi].
Complex log_one_minus_expi(Complex z);

}  // namespace causal
