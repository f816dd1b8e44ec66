#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "causal/commutator.hpp"
#include "causal/error.hpp"
#include "causal/parallel.hpp"
#include "causal/spectrum.hpp"

using namespace causal;

namespace {

// Direct sum over enumerated modes: (u(a) u(b)^* - c.c.) e^{-w eps}.
Complex brute_force(const CheckedConfig& cfg, const SpacetimeEvent& a, const SpacetimeEvent& b) {
  Complex acc{};
  for (const auto& m : enumerate_modes(cfg)) {
    const Complex p = eval_mode(cfg.bc, m, a) * std::conj(eval_mode(cfg.bc, m, b));
    double w = std::exp(-m.omega * cfg.epsilon);
    if (cfg.opts.lanczos_sigma) w *= lanczos_factor(m, cfg.cutoff);
    acc += (p - std::conj(p)) * w;
  }
  return acc;
}

SpacetimeEvent random_event(std::mt19937_64& rng, const BoundaryConfig& bc) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpacetimeEvent e{(u(rng) - 0.5) * 20.0, {}};
  for (const auto& a : bc.axes) e.x.push_back(u(rng) * a.length.value_or(1.0));
  return e;
}

std::vector<BoundaryConfig> boundaries() {
  return {
      {{AxisSpec::periodic(3.0), AxisSpec::periodic(4.0)}},
      {{AxisSpec::periodic(3.0), AxisSpec::dirichlet(2.0)}},
      {{AxisSpec::neumann(3.0), AxisSpec::dirichlet(2.0)}},
      {{AxisSpec::neumann(2.0), AxisSpec::periodic(2.5), AxisSpec::dirichlet(1.5)}},
      {{AxisSpec::dirichlet(5.0)}},
  };
}

}  // namespace

TEST(ModeSum, MatchesDirectSumOverEnumeratedModes) {
  std::mt19937_64 rng(1);
  for (const auto& bc : boundaries())
    for (bool lanczos : {false, true}) {
      CommutatorOptions o;
      o.cutoff = {bc.dim() == 3 ? 4 : 9};
      o.epsilon = 0.05;
      o.lanczos_sigma = lanczos;
      const auto cfg = validate_config(bc, o);
      const ModeSum sum(cfg);
      for (int i = 0; i < 5; ++i) {
        const auto a = random_event(rng, bc), b = random_event(rng, bc);
        const Complex want = brute_force(cfg, a, b);
        EXPECT_NEAR(std::abs(sum(a, b) - want), 0.0, 1e-12 * (1.0 + std::abs(want)));
      }
    }
}

TEST(ModeSum, ExactlyAntisymmetricAndImaginary) {
  std::mt19937_64 rng(2);
  for (const auto& bc : boundaries()) {
    CommutatorOptions o;
    o.cutoff = {12};
    const CommutatorEngine eng(bc, o);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_event(rng, bc), b = random_event(rng, bc);
      const Complex ab = eng(a, b).value, ba = eng(b, a).value;
      EXPECT_EQ(ab, -ba);
      EXPECT_EQ(ab.real(), 0.0);
    }
  }
}

TEST(ModeSum, VanishesAtEqualTimesAndPoints) {
  const BoundaryConfig bc{{AxisSpec::periodic(3.0), AxisSpec::dirichlet(2.0)}};
  const CommutatorEngine eng(bc, {});
  const SpacetimeEvent a{1.0, {0.3, 0.7}};
  EXPECT_EQ(eng(a, a).value, Complex(0.0, 0.0));
}

TEST(ModeSum, TranslationInvariantOnTorus) {
  std::mt19937_64 rng(3);
  const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 2.0, 2);
  CommutatorOptions o;
  o.cutoff = {15};
  const CommutatorEngine eng(bc, o);
  for (int i = 0; i < 10; ++i) {
    auto a = random_event(rng, bc), b = random_event(rng, bc);
    const Complex v = eng(a, b).value;
    for (auto* e : {&a, &b}) {
      e->t += 1.25;
      e->x[0] += 0.4;
      e->x[1] -= 0.9;
    }
    EXPECT_NEAR(std::abs(eng(a, b).value - v), 0.0, 1e-12);
  }
}

TEST(ModeSum, ThreadCountAndSummationPolicy) {
  const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 3);
  CommutatorOptions o;
  o.cutoff = {12};
  const SpacetimeEvent a{0.4, {0.5, 0.1, 0.0}}, b{0.0, {0.0, 0.0, 0.0}};
  set_thread_count(1);
  const Complex one = CommutatorEngine(bc, o)(a, b).value;
  set_thread_count(6);
  const Complex six = CommutatorEngine(bc, o)(a, b).value;
  o.summation = Summation::SerialCompensated;
  const Complex serial = CommutatorEngine(bc, o)(a, b).value;
  set_thread_count(0);
  EXPECT_EQ(one, six);
  EXPECT_NEAR(std::abs(one - serial), 0.0, 1e-12);
}

TEST(ZeroMode, IsMinusIDtOverVolume) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 20.0);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 20; ++i) {
      const double L = u(rng), dt = u(rng) - 10.0;
      const Complex z = zero_mode_commutator(BoundaryConfig::uniform(AxisKind::Periodic, L, n), dt);
      EXPECT_EQ(z.real(), 0.0);
      EXPECT_NEAR(z.imag(), -dt / std::pow(L, n), 4e-16 * std::abs(dt / std::pow(L, n)));
    }
  EXPECT_THROW((void)zero_mode_commutator(BoundaryConfig{{AxisSpec::dirichlet(1.0)}}, 1.0), Error);
}

TEST(Engine, PartsAddUpAndZeroModeFollowsOption) {
  const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 4.0, 2);
  CommutatorOptions o;
  o.cutoff = {10};
  const SpacetimeEvent a{1.5, {0.2, 0.3}}, b{0.0, {2.0, 1.0}};
  const auto with = CommutatorEngine(bc, o)(a, b);
  EXPECT_EQ(with.value, with.parts.osc + with.parts.zero_mode);
  EXPECT_NEAR(with.parts.zero_mode.imag(), -1.5 / 16.0, 1e-16);
  o.include_zero_mode = false;
  const auto without = CommutatorEngine(bc, o)(a, b);
  EXPECT_EQ(without.parts.zero_mode, Complex(0.0, 0.0));
  EXPECT_EQ(without.value, with.parts.osc);
  EXPECT_EQ(with.diagnostics.modes_summed, 21u * 21u - 1u);
}

TEST(Engine, MethodSelection) {
  EXPECT_EQ(CommutatorEngine(BoundaryConfig{{AxisSpec::periodic(1.0)}}, {}).method(), Method::ClosedForm);
  EXPECT_EQ(CommutatorEngine(BoundaryConfig{{AxisSpec::neumann(1.0)}}, {}).method(), Method::ClosedForm);
  EXPECT_EQ(CommutatorEngine(BoundaryConfig{{AxisSpec::dirichlet(1.0)}}, {}).method(), Method::ModeSum);
  EXPECT_EQ(CommutatorEngine(BoundaryConfig{{AxisSpec::periodic(1.0), AxisSpec::open()}}, {}).method(),
            Method::ContinuumIntegral);
  CommutatorOptions o;
  o.closed_form = false;
  EXPECT_EQ(CommutatorEngine(BoundaryConfig{{AxisSpec::periodic(1.0)}}, o).method(), Method::ModeSum);
  EXPECT_EQ(to_string(Method::ContinuumIntegral), "continuum_integral");
}

TEST(Engine, DimensionMismatchIsReported) {
  const CommutatorEngine eng(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 2), {});
  try {
    (void)eng({0.0, {0.1}}, {0.0, {0.1, 0.2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Engine, TorusSpacelikeViolationWithoutZeroModeIsDtOverArea) {
  const auto bc = BoundaryConfig::uniform(AxisKind::Periodic, 10.0, 2);
  CommutatorOptions o;
  o.cutoff = {100};
  o.include_zero_mode = false;
  const CommutatorEngine eng(bc, o);
  for (double dt : {1.0, 2.0, 3.0}) {
    const auto r = eng({dt, {5.0, 2.0}}, {0.0, {0.0, 0.0}});
    EXPECT_NEAR(r.value.imag(), dt / 100.0, 5e-2);
  }
}

TEST(Huygens, RequiresThreeTorus) {
  CommutatorOptions o;
  o.cutoff = {4};
  const auto cfg = validate_config(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 2), o);
  const std::vector<double> dts{0.1};
  EXPECT_THROW((void)huygens_profile(cfg, {0.5, 0.0}, dts), Error);
}

TEST(Huygens, ProfileReportsNullRadiiInRange) {
  CommutatorOptions o;
  o.cutoff = {6};
  o.lanczos_sigma = true;
  const auto cfg = validate_config(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 3), o);
  std::vector<double> dts;
  for (int i = 1; i <= 40; ++i) dts.push_back(i * 0.025);
  const auto h = huygens_profile(cfg, {0.5, 0.0, 0.0}, dts);
  ASSERT_EQ(h.im_value.size(), dts.size());
  ASSERT_FALSE(h.null_radii.empty());
  EXPECT_NEAR(h.null_radii.front(), 0.5, 1e-12);
  EXPECT_TRUE(h.lanczos);
  for (std::size_t i = 0; i < dts.size(); ++i) EXPECT_NEAR(h.im_value[i] - h.im_osc[i], -dts[i], 1e-12);
}
