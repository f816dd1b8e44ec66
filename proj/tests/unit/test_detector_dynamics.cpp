#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "causal/detector_dynamics.hpp"
#include "causal/error.hpp"

using namespace causal;

namespace {

DetectorSpec detector(double x, double t_on, double t_off, double omega) {
  DetectorSpec d;
  d.center = {x};
  d.t_on = t_on;
  d.t_off = t_off;
  d.omega = omega;
  return d;
}

const BoundaryConfig kCircle{{AxisSpec::periodic(10.0)}};

}  // namespace

TEST(SignalBlock, TraceVanishesForRandomInputs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Estimator est(kCircle, {});
  for (int i = 0; i < 20; ++i) {
    const double alpha = u(rng);
    const double r = std::sqrt(alpha * (1.0 - alpha)) * u(rng);
    const QubitState s{alpha, std::polar(r, 6.28 * u(rng))};
    const bool top = i % 2;
    const auto A = detector(0.0, 0.0, top ? 0.7 : 0.0, 3.0 * u(rng));
    const auto B = detector(10.0 * u(rng), 1.0, top ? 1.0 + 5.0 * u(rng) : 1.0, 3.0 * u(rng));
    if (!check_nonoverlap(kCircle, A, B)) continue;
    const auto b = signal_block(est, A, s, B, s);
    EXPECT_LT(std::abs(b.trace()), 1e-14);
  }
}

TEST(SignalBlock, DeltaSwitchingHasClosedExpression) {
  const Estimator est(kCircle, {});
  auto A = detector(0.0, 0.0, 0.0, 1.3), B = detector(2.0, 3.0, 3.0, 0.7);
  A.coupling = 0.5;
  B.coupling = 2.0;
  const QubitState sA{0.4, Complex(0.2, 0.3)}, sB{0.7, Complex(-0.1, 0.25)};
  const auto b = signal_block(est, A, sA, B, sB);
  const Complex C = est.engine()({0.0, {0.0}}, {3.0, {2.0}}).value;
  const double reA = (sA.beta * std::polar(1.0, 1.3 * 0.0)).real();
  const double imB = (sB.beta * std::polar(1.0, 0.7 * 3.0)).imag();
  const double lam = 2.0 * 0.5 * 2.0;
  EXPECT_NEAR(std::abs(b.m[0][0] - lam * reA * C * (-2.0 * imB)), 0.0, 1e-15);
  const Complex off = Complex(0.0, -1.0) * std::polar(1.0, -0.7 * 3.0) * (1.0 - 2.0 * 0.7);
  EXPECT_NEAR(std::abs(b.m[0][1] - lam * reA * C * off), 0.0, 1e-15);
  EXPECT_EQ(b.m[1][0], -b.m[0][1]);
  EXPECT_EQ(b.m[1][1], -b.m[0][0]);
}

TEST(SignalBlock, TopHatSwitchingMatchesBruteForce) {
  CommutatorOptions o;
  o.include_zero_mode = false;
  const Estimator est(kCircle, o);
  const auto A = detector(0.0, 0.0, 1.0, 2.0), B = detector(3.0, 2.0, 3.5, 1.0);
  const QubitState sA{0.5, Complex(0.3, 0.1)}, sB{0.2, Complex(0.1, -0.2)};
  const auto b = signal_block(est, A, sA, B, sB);
  const int n = 800;
  Complex m00{}, m01{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double t = (i + 0.5) / n, tp = 2.0 + 1.5 * (j + 0.5) / n;
      const Complex C = est.engine()({t, {0.0}}, {tp, {3.0}}).value;
      const double w = (sA.beta * std::polar(1.0, 2.0 * t)).real();
      m00 += w * C * (-2.0 * (sB.beta * std::polar(1.0, 1.0 * tp)).imag());
      m01 += w * C * Complex(0.0, -1.0) * std::polar(1.0, -1.0 * tp) * (1.0 - 2.0 * sB.alpha);
    }
  const double scale = 2.0 * (1.0 / n) * (1.5 / n) * (1.0 / 1.5);
  EXPECT_NEAR(std::abs(b.m[0][0] - scale * m00), 0.0, 2e-3);
  EXPECT_NEAR(std::abs(b.m[0][1] - scale * m01), 0.0, 2e-3);
  EXPECT_LT(b.error, 1e-8);
}

TEST(SignalBlock, LinearInBetaA) {
  const Estimator est(kCircle, {});
  const auto A = detector(0.0, 0.0, 1.0, 1.1), B = detector(4.0, 7.0, 8.0, 0.6);
  const QubitState b1{0.5, Complex(0.1, 0.2)}, b2{0.5, Complex(-0.15, 0.05)};
  const QubitState sum{0.5, b1.beta + b2.beta}, sB{0.3, Complex(0.2, 0.2)};
  const auto m1 = signal_block(est, A, b1, B, sB), m2 = signal_block(est, A, b2, B, sB);
  const auto ms = signal_block(est, A, sum, B, sB);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(std::abs(ms.m[i][j] - (m1.m[i][j] + m2.m[i][j])), 0.0,
                  1e-12 * (std::abs(ms.m[i][j]) + 1e-300));
}

TEST(SignalBlock, VanishesForSpacelikeDetectorsWithZeroMode) {
  CommutatorOptions o;
  o.epsilon = 1e-12;
  const Estimator est(kCircle, o);
  const auto A = detector(0.0, 0.0, 0.0, 1.0), B = detector(5.0, 2.0, 2.0, 1.0);
  const QubitState s{0.3, Complex(0.2, 0.2)};
  const auto b = signal_block(est, A, s, B, s);
  for (const auto& row : b.m)
    for (const auto& e : row) EXPECT_LT(std::abs(e), 1e-10);
}

TEST(SignalBlock, RejectsInvalidStateAndOverlap) {
  const Estimator est(kCircle, {});
  const auto A = detector(0.0, 0.0, 0.0, 1.0), B = detector(5.0, 2.0, 2.0, 1.0);
  try {
    (void)signal_block(est, A, QubitState{0.5, Complex(0.6, 0.0)}, B, QubitState{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidState);
  }
  EXPECT_THROW((void)signal_block(est, B, QubitState{}, A, QubitState{}), Error);
}

TEST(SignalMagnitude, EqualsLargestSingularValue) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    SignalBlock b;
    for (auto& row : b.m)
      for (auto& e : row) e = Complex(g(rng), g(rng));
    // sigma_max^2 = (|m|_F^2 + sqrt(|m|_F^4 - 4 |det m|^2)) / 2
    double f2 = 0.0;
    for (const auto& row : b.m)
      for (const auto& e : row) f2 += std::norm(e);
    const double det = std::abs(b.m[0][0] * b.m[1][1] - b.m[0][1] * b.m[1][0]);
    const double want = std::sqrt(0.5 * (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4.0 * det * det))));
    EXPECT_NEAR(signal_magnitude(b), want, 1e-12 * want);
  }
}

TEST(SignalBlock, HermiticityDefectIsMeasured) {
  SignalBlock b;
  b.m = {{{Complex(1.0, 0.0), Complex(0.0, 1.0)}, {Complex(0.0, -1.0), Complex(-1.0, 0.0)}}};
  EXPECT_NEAR(hermiticity_defect(b), 0.0, 1e-15);
  b.m[0][1] = 1.0;
  b.m[1][0] = -1.0;
  EXPECT_NEAR(hermiticity_defect(b), 2.0 * std::sqrt(2.0), 1e-15);
}
