#include <cmath>
#include <ostream>
#include <string>

#include "causal/commutator.hpp"
#include "causal/detector_dynamics.hpp"
#include "causal/estimator.hpp"
#include "causal_cli/app.hpp"

namespace causal::cli {

namespace {

struct Checker {
  std::ostream& out;
  int failures = 0;

  void operator()(const std::string& name, bool ok, double measured) {
    out << (ok ? "PASS " : "FAIL ") << name << "  (" << measured << ")\n";
    if (!ok) ++failures;
  }
};

DetectorSpec point_delta(std::vector<double> x, double t) {
  DetectorSpec d;
  d.center = std::move(x);
  d.t_on = d.t_off = t;
  return d;
}

}  // namespace

int selftest(std::ostream& out) {
  Checker check{out};

  {
    CommutatorOptions o;
    o.cutoff = {20};
    const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 10.0, 2);
    const SpacetimeEvent a{1.3, {0.4, 2.2}}, b{-0.7, {3.1, 9.0}};
    const auto x = full_commutator(bc, a, b, o).value, y = full_commutator(bc, b, a, o).value;
    check("mode sum antisymmetric", x == -y, std::abs(x + y));
    check("mode sum purely imaginary", x.real() == 0.0, x.real());
  }
  {
    CommutatorOptions o;
    o.epsilon = 1e-4;
    o.cutoff = {20000};
    o.include_zero_mode = false;
    const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
    const SpacetimeEvent a{1.0, {1.0}}, b{0.0, {4.5}};
    const Complex closed = full_commutator(bc, a, b, o).value;
    o.closed_form = false;
    const Complex sum = full_commutator(bc, a, b, o).value;
    check("closed form matches mode sum", std::abs(closed.imag() - sum.imag()) < 1e-4,
          std::abs(closed.imag() - sum.imag()));
  }
  {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 2.5, n);
      const Complex z = zero_mode_commutator(bc, 0.8);
      worst = std::max(worst, std::abs(z - Complex(0.0, -0.8 / std::pow(2.5, n))));
    }
    check("zero mode is -i dt / V", worst < 1e-15, worst);
  }
  {
    CommutatorOptions o;
    const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
    const auto e = estimator_E(bc, point_delta({0.0}, 0.0), point_delta({5.0}, 2.0), o);
    check("spacelike estimator vanishes with zero mode", e.value < 1e-5, e.value);
    o.include_zero_mode = false;
    const auto f = estimator_E(bc, point_delta({0.0}, 0.0), point_delta({5.0}, 2.0), o);
    check("spacelike estimator without zero mode is dt / L", std::abs(f.value - 0.2) < 1e-5,
          std::abs(f.value - 0.2));
  }
  {
    const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
    auto A = point_delta({0.0}, 0.0), B = point_delta({5.0}, 7.0);
    A.omega = 1.0;
    B.omega = 2.0;
    const QubitState s{0.3, Complex(0.2, 0.1)};
    const auto blk = signal_block(bc, A, s, B, s, CommutatorOptions{});
    check("signal block is traceless", std::abs(blk.trace()) < 1e-14, std::abs(blk.trace()));
  }
  return check.failures;
}

}  // namespace causal::cli
