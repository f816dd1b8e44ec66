#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "causal/error.hpp"
#include "causal/types.hpp"

using namespace causal;

namespace {

Error validation_error(const BoundaryConfig& bc, const CommutatorOptions& o = {}) {
  try {
    (void)validate_config(bc, o);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected validation to fail";
  return Error(Issue{ErrorCode::BadOption, "", ""});
}

}  // namespace

TEST(Validation, MissingLengthNamesTheAxis) {
  const auto e = validation_error(BoundaryConfig{{AxisSpec{AxisKind::Periodic, std::nullopt}}});
  EXPECT_EQ(e.code(), ErrorCode::MissingLength);
  EXPECT_EQ(e.issues().front().field, "axes[0].length");
}

TEST(Validation, CollectsEveryIssue) {
  CommutatorOptions o;
  o.epsilon = -1.0;
  o.cutoff = {0};
  const auto e = validation_error(BoundaryConfig{{AxisSpec::periodic(-2.0), AxisSpec::open(), AxisSpec::open()}}, o);
  EXPECT_TRUE(e.has(ErrorCode::NonPositiveLength));
  EXPECT_TRUE(e.has(ErrorCode::MultipleOpenAxes));
  EXPECT_TRUE(e.has(ErrorCode::BadOption));
  EXPECT_TRUE(e.has(ErrorCode::BadCutoff));
}

TEST(Validation, RejectsNonFiniteAndBadDimension) {
  EXPECT_TRUE(validation_error(BoundaryConfig{{AxisSpec::periodic(std::numeric_limits<double>::infinity())}})
                  .has(ErrorCode::NonFinite));
  EXPECT_TRUE(validation_error(BoundaryConfig{}).has(ErrorCode::UnsupportedDimension));
  EXPECT_TRUE(validation_error(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 4))
                  .has(ErrorCode::UnsupportedDimension));
  EXPECT_TRUE(validation_error(BoundaryConfig{{AxisSpec::open()}}).has(ErrorCode::UnsupportedBoundary));
}

TEST(Validation, CutoffBroadcastAndPerAxis) {
  CommutatorOptions o;
  o.cutoff = {7};
  const auto c = validate_config(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 3), o);
  EXPECT_EQ(c.cutoff, (std::vector<int>{7, 7, 7}));
  o.cutoff = {3, 4};
  const auto d = validate_config(BoundaryConfig{{AxisSpec::periodic(1.0), AxisSpec::open()}}, o);
  EXPECT_EQ(d.cutoff, (std::vector<int>{3, 0}));
  o.cutoff = {1, 2};
  EXPECT_TRUE(validation_error(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 3), o).has(ErrorCode::BadCutoff));
}

TEST(Validation, DefaultEpsilonScalesWithLargestLength) {
  const BoundaryConfig bc{{AxisSpec::periodic(4.0), AxisSpec::dirichlet(10.0)}};
  EXPECT_DOUBLE_EQ(validate_config(bc, {}).epsilon, 1e-5);
  CommutatorOptions o;
  o.epsilon = 0.25;
  EXPECT_EQ(validate_config(bc, o).epsilon, 0.25);
}

TEST(Boundary, ZeroModeAndVolume) {
  EXPECT_TRUE((BoundaryConfig{{AxisSpec::periodic(2.0), AxisSpec::neumann(3.0)}}.has_zero_mode()));
  EXPECT_FALSE((BoundaryConfig{{AxisSpec::periodic(2.0), AxisSpec::dirichlet(3.0)}}.has_zero_mode()));
  EXPECT_FALSE((BoundaryConfig{{AxisSpec::periodic(2.0), AxisSpec::open()}}.has_zero_mode()));
  EXPECT_DOUBLE_EQ((BoundaryConfig{{AxisSpec::periodic(2.0), AxisSpec::neumann(3.0)}}.volume()), 6.0);
  EXPECT_TRUE(BoundaryConfig::uniform(AxisKind::Periodic, 1.0, 2).translation_invariant());
  EXPECT_EQ((BoundaryConfig{{AxisSpec::periodic(2.0), AxisSpec::open()}}.open_axis()), 1);
}

TEST(Names, AxisKindAndSummationRoundTrip) {
  for (auto k : {AxisKind::Periodic, AxisKind::Neumann, AxisKind::Dirichlet, AxisKind::Open})
    EXPECT_EQ(parse_axis_kind(to_string(k)), k);
  for (auto s : {Summation::PairwiseDeterministic, Summation::SerialCompensated})
    EXPECT_EQ(parse_summation(to_string(s)), s);
  EXPECT_FALSE(parse_axis_kind("torus"));
}

TEST(Detector, ValidationCatchesBadProfiles) {
  DetectorSpec d;
  d.center = {0.0};
  EXPECT_NO_THROW(validate_detector(d, 1));
  EXPECT_THROW(validate_detector(d, 2), Error);
  d.t_on = 1.0;
  d.t_off = 0.5;
  try {
    validate_detector(d, 1, "A");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidProfile);
  }
  d.t_off = 2.0;
  d.sigma = -1.0;
  EXPECT_THROW(validate_detector(d, 1), Error);
  d.sigma = 0.0;
  EXPECT_TRUE(d.pointlike());
  EXPECT_FALSE(d.delta_switching());
  EXPECT_DOUBLE_EQ(d.switch_mid(), 1.5);
}
