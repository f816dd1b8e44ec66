#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace causal {

enum class ErrorCode {
  NonPositiveLength,
  MissingLength,
  MultipleOpenAxes,
  BadCutoff,
  BadOption,
  UnsupportedDimension,
  DimensionMismatch,
  NonFinite,
  ZeroFrequency,
  NoZeroMode,
  UnsupportedBoundary,
  OverlappingSupports,
  InvalidProfile,
  InvalidState,
  QuadratureNonConvergence,
};

std::string_view to_string(ErrorCode code) noexcept;

/// One violated invariant. `field` is a dotted path such as `axes[0].length`.
struct Issue {
  ErrorCode code;
  std::string field;
  std::string message;
};

/// Library error carrying one or more issues.
///
/// Configuration checks collect every violation before throwing, so a single
/// Error may describe several problems at once.
class Error : public std::runtime_error {
 public:
  explicit Error(Issue issue);
  explicit Error(std::vector<Issue> issues);

  ErrorCode code() const noexcept { return issues_.front().code; }
  const std::vector<Issue>& issues() const noexcept { return issues_; }
  bool has(ErrorCode code) const noexcept;

 private:
  std::vector<Issue> issues_;
};

/// Raised by adaptive quadrature when panel refinement is exhausted.
class QuadratureError : public Error {
 public:
  QuadratureError(std::string where, double achieved_error, double requested_tolerance);

  double achieved_error() const noexcept { return achieved_; }
  double requested_tolerance() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

}  // namespace causal
