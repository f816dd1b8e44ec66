#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "causal/error.hpp"
#include "causal/estimator.hpp"

using namespace causal;

namespace {

DetectorSpec detector(std::vector<double> x, double sigma, double t_on, double t_off) {
  DetectorSpec d;
  d.center = std::move(x);
  d.sigma = sigma;
  d.t_on = t_on;
  d.t_off = t_off;
  return d;
}

// Midpoint estimate of int p(x) q(x - s) dx.
double convolve(const Profile& p, const Profile& q, double s) {
  const int n = 200000;
  const double lo = p.lo - 1.0, hi = p.hi + 1.0, h = (hi - lo) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (i + 0.5) * h;
    acc += p(x) * q(x - s);
  }
  return acc * h;
}

}  // namespace

TEST(Kernel, MassIsProductOfMasses) {
  const Profile th1 = Profile::top_hat(0.0, 2.0, 0.5), th2 = Profile::top_hat(3.0, 3.5, 2.0);
  const Profile d1 = Profile::delta(1.0, 3.0), d2 = Profile::delta(-2.0, 0.5);
  for (const auto& [p, q] : {std::pair{th1, th2}, {th1, d2}, {d1, th2}, {d1, d2}})
    EXPECT_NEAR(difference_kernel(p, q).mass(), p.mass() * q.mass(), 1e-14);
}

TEST(Kernel, MatchesNumericalCrossCorrelation) {
  const Profile p = Profile::top_hat(0.0, 2.0, 0.5), q = Profile::top_hat(3.0, 3.5, 2.0);
  const auto k = difference_kernel(p, q);
  EXPECT_DOUBLE_EQ(k.lo(), -3.5);
  EXPECT_DOUBLE_EQ(k.hi(), -1.0);
  for (double s : {-3.4, -3.1, -2.6, -2.0, -1.2}) EXPECT_NEAR(k(s), convolve(p, q, s), 1e-4) << s;
  const auto box = difference_kernel(Profile::delta(1.0, 1.0), q);
  EXPECT_DOUBLE_EQ(box(-2.25), 2.0);
  EXPECT_EQ(box(-1.0), 0.0);
}

TEST(Overlap, TimeOrderAndSpatialSeparation) {
  const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
  EXPECT_TRUE(check_nonoverlap(bc, detector({0.0}, 1.0, 0.0, 1.0), detector({5.0}, 1.0, 2.0, 3.0)));
  EXPECT_FALSE(check_nonoverlap(bc, detector({0.0}, 1.0, 0.0, 2.0), detector({5.0}, 1.0, 2.0, 3.0)));
  EXPECT_FALSE(check_nonoverlap(bc, detector({0.0}, 4.0, 0.0, 1.0), detector({4.0}, 4.0, 2.0, 3.0)));
  // Minimal image: 9.5 is 0.5 away from 0 on a circle of length 10.
  EXPECT_FALSE(check_nonoverlap(bc, detector({0.0}, 1.0, 0.0, 1.0), detector({9.5}, 1.0, 2.0, 3.0)));
  const BoundaryConfig box{{AxisSpec::dirichlet(10.0)}};
  EXPECT_TRUE(check_nonoverlap(box, detector({0.5}, 0.5, 0.0, 1.0), detector({9.5}, 0.5, 2.0, 3.0)));
  const auto bc2 = BoundaryConfig::uniform(AxisKind::Periodic, 10.0, 2);
  EXPECT_TRUE(check_nonoverlap(bc2, detector({0.0, 0.0}, 1.0, 0.0, 1.0), detector({3.0, 0.0}, 1.0, 2.0, 3.0)));
}

TEST(Smeared, PointlikeEqualsCommutator) {
  const BoundaryConfig bc{{AxisSpec::neumann(10.0)}};
  const Estimator est(bc, {});
  const auto A = detector({2.0}, 0.0, 0.0, 0.0), B = detector({6.5}, 0.0, 3.0, 3.0);
  for (double s : {-7.0, -4.0, -1.0}) {
    const auto sm = est.smeared(A, B, s, 0.0);
    const auto c = est.engine()({s, {2.0}}, {0.0, {6.5}}).value;
    EXPECT_EQ(sm.value, c);
  }
}

TEST(Smeared, OneDimensionalBoxesMatchBruteForce) {
  for (auto kind : {AxisKind::Periodic, AxisKind::Neumann}) {
    const BoundaryConfig bc{{AxisSpec{kind, 10.0}}};
    const Estimator est(bc, {});
    const auto A = detector({2.0}, 1.5, 0.0, 0.0), B = detector({5.0}, 1.0, 0.0, 0.0);
    for (double s : {-4.0, -2.7, -1.0}) {
      const auto sm = est.smeared(A, B, s, 0.0);
      const int n = 600;
      Complex acc{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double x = 2.0 - 0.75 + (i + 0.5) * 1.5 / n, y = 5.0 - 0.5 + (j + 0.5) * 1.0 / n;
          acc += est.engine()({s, {x}}, {0.0, {y}}).value;
        }
      acc /= double(n) * n;
      EXPECT_NEAR(std::abs(sm.value - acc), 0.0, 5e-3) << to_string(kind) << " s=" << s;
      EXPECT_LT(sm.error, 1e-8);
    }
  }
}

TEST(Smeared, TwoDimensionalBoxesMatchBruteForce) {
  for (const auto& bc : {BoundaryConfig::uniform(AxisKind::Periodic, 4.0, 2),
                         BoundaryConfig{{AxisSpec::periodic(4.0), AxisSpec::dirichlet(4.0)}}}) {
    CommutatorOptions o;
    o.cutoff = {8};
    o.quadrature_nodes = 8;
    const Estimator est(bc, o);
    const auto A = detector({1.0, 1.0}, 0.4, 0.0, 0.0), B = detector({2.5, 2.0}, 0.3, 0.0, 0.0);
    const double s = -2.5;
    const auto sm = est.smeared(A, B, s, 0.0);
    const int n = 20;
    Complex acc{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double x0 = 0.8 + (i + 0.5) * 0.4 / n, x1 = 0.8 + (j + 0.5) * 0.4 / n;
            const double y0 = 2.35 + (k + 0.5) * 0.3 / n, y1 = 1.85 + (l + 0.5) * 0.3 / n;
            acc += est.engine()({s, {x0, x1}}, {0.0, {y0, y1}}).value;
          }
    acc /= std::pow(double(n), 4);
    EXPECT_NEAR(std::abs(sm.value - acc), 0.0, 5e-4);
    EXPECT_GT(std::abs(acc), 1e-2);
  }
}

TEST(Estimator, DeltaPointlikeIsAbsoluteCommutator) {
  const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
  CommutatorOptions o;
  o.include_zero_mode = false;
  const Estimator est(bc, o);
  const auto r = est(detector({0.0}, 0.0, 0.0, 0.0), detector({5.0}, 0.0, 2.0, 2.0));
  EXPECT_NEAR(r.value, std::abs(est.engine()({0.0, {0.0}}, {2.0, {5.0}}).value), 1e-15);
  EXPECT_NEAR(r.value, 0.2, 1e-5);
}

TEST(Estimator, TopHatSwitchingMatchesBruteForce) {
  const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
  CommutatorOptions o;
  o.include_zero_mode = false;
  const Estimator est(bc, o);
  const auto A = detector({0.0}, 0.0, 0.0, 1.0), B = detector({3.0}, 0.0, 2.0, 4.0);
  const auto r = est(A, B);
  const int n = 1000;
  Complex acc{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double t = (i + 0.5) / n, tp = 2.0 + 2.0 * (j + 0.5) / n;
      acc += est.engine()({t, {0.0}}, {tp, {3.0}}).value;
    }
  acc *= (1.0 / n) * (2.0 / n) * (1.0 * 0.5);
  EXPECT_NEAR(r.value, std::abs(acc), 2e-3);
  EXPECT_LT(r.error, 1e-8);
}

TEST(Estimator, ShrinkingSupportsApproachDeltaLimit) {
  const BoundaryConfig bc{{AxisSpec::periodic(10.0)}};
  const Estimator est(bc, {});
  // Midpoints sit 0.1 inside the light cone of the nearest image.
  const double target = est(detector({0.0}, 0.0, 0.0, 0.0), detector({6.0}, 0.0, 5.9, 5.9)).value;
  double prev = 1e300;
  for (double d : {0.8, 0.4, 0.2, 0.1}) {
    const auto A = detector({0.0}, d, 0.0, d), B = detector({6.0}, d, 5.9, 5.9 + d);
    const double dev = std::abs(est(A, B).value - target);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
}

TEST(Estimator, RejectsOverlappingSupports) {
  const Estimator est(BoundaryConfig{{AxisSpec::periodic(10.0)}}, {});
  try {
    (void)est(detector({0.0}, 1.0, 0.0, 2.0), detector({5.0}, 1.0, 1.0, 3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverlappingSupports);
  }
}

TEST(Estimator, BreakpointsAreNullLineImages) {
  const Estimator est(BoundaryConfig{{AxisSpec::periodic(10.0)}}, {});
  const auto br = est.time_breakpoints(detector({0.0}, 0.0, 0.0, 0.0), detector({3.0}, 0.0, 0.0, 0.0), -20.0, 20.0);
  for (double v : {-17.0, -13.0, -7.0, -3.0, 3.0, 7.0, 13.0, 17.0})
    EXPECT_NE(std::find(br.begin(), br.end(), v), br.end()) << v;
  EXPECT_TRUE(std::is_sorted(br.begin(), br.end()));
}

TEST(EstimatorVsL, SpacelikeBranchDecaysAsInverseLength) {
  const std::vector<double> Ls{10.0, 20.0, 40.0, 80.0, 160.0}, dts{0.5, 2.0};
  const auto r = estimator_vs_L(Ls, 1.0, dts, 0.5, 2.0, {});
  ASSERT_EQ(r.spacelike.size(), Ls.size());
  for (std::size_t i = 0; i < Ls.size(); ++i) EXPECT_NEAR(r.spacelike[i], 0.5 / Ls[i], 1e-6);
  EXPECT_NEAR(r.fit_exponent, -1.0, 1e-3);
  ASSERT_EQ(r.curves.size(), Ls.size());
  EXPECT_EQ(r.curves[0].size(), dts.size());
}

TEST(EstimatorVsL, LogLogSlopeOfPowerLaw) {
  const std::vector<double> x{1.0, 2.0, 5.0, 9.0}, y{3.0, 3.0 / 8.0, 3.0 / 125.0, 3.0 / 729.0};
  EXPECT_NEAR(loglog_slope(x, y), -3.0, 1e-12);
}
