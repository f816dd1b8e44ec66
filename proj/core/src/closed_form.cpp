#include "causal/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "causal/error.hpp"

namespace causal {

using std::numbers::pi;

Complex log_one_minus_expi(Complex z) {
  const Complex zr(std::remainder(z.real(), 2.0 * pi), z.imag());
  const Complex half = 0.5 * zr;
  const Complex w = Complex(0.0, -2.0) * std::sin(half) * std::exp(Complex(0.0, 1.0) * half);
  return std::log(w);
}

namespace {

// log(1 - e^{iz}) - log(1 - e^{-iz}) with z = 2 pi (s - i eps) / period.
Complex log_pair(double s, double period, double eps) {
  const double r = std::remainder(s, period);
  const Complex z = (2.0 * pi / period) * Complex(r, -eps);
  return log_one_minus_expi(z) - log_one_minus_expi(-z);
}

}  // namespace

Complex osc_commutator_closed_1d(AxisKind kind, double L, const SpacetimeEvent& a,
                                 const SpacetimeEvent& b, double epsilon) {
  require_dim(a, 1);
  require_dim(b, 1);
  const double ua = a.t - a.x[0], va = a.t + a.x[0];
  const double ub = b.t - b.x[0], vb = b.t + b.x[0];
  const double c = 1.0 / (4.0 * pi);

  switch (kind) {
    case AxisKind::Periodic:
      return c * (log_pair(ua - ub, L, epsilon) + log_pair(va - vb, L, epsilon));
    case AxisKind::Neumann: {
      const double P = 2.0 * L;
      // Grouped so that exchanging a and b only conjugates each bracket.
      return c * ((log_pair(ua - ub, P, epsilon) + log_pair(va - vb, P, epsilon)) +
                  (log_pair(ua - vb, P, epsilon) + log_pair(va - ub, P, epsilon)));
    }
    default:
      break;
  }
  throw Error(Issue{ErrorCode::UnsupportedBoundary, "axes[0].kind",
                    "closed form exists for periodic and Neumann intervals only"});
}

BranchShortcut osc_commutator_branch_1d(double L, const SpacetimeEvent& a,
                                        const SpacetimeEvent& b, double epsilon) {
  require_dim(a, 1);
  require_dim(b, 1);
  const double dt = a.t - b.t;
  const double dx = std::abs(std::remainder(a.x[0] - b.x[0], L));
  BranchShortcut out;
  out.value = Complex(epsilon, dt) / L;
  out.valid = std::abs(dt) < dx && dx / L >= 0.25;
  return out;
}

}  // namespace causal
