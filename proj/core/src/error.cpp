#include "causal/error.hpp"

#include <algorithm>
#include <sstream>

namespace causal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::MissingLength: return "MissingLength";
    case ErrorCode::MultipleOpenAxes: return "MultipleOpenAxes";
    case ErrorCode::BadCutoff: return "BadCutoff";
    case ErrorCode::BadOption: return "BadOption";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::NoZeroMode: return "NoZeroMode";
    case ErrorCode::UnsupportedBoundary: return "UnsupportedBoundary";
    case ErrorCode::OverlappingSupports: return "OverlappingSupports";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<Issue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << to_string(issues[i].code);
    if (!issues[i].field.empty()) os << " at " << issues[i].field;
    if (!issues[i].message.empty()) os << ": " << issues[i].message;
  }
  return os.str();
}

}  // namespace

Error::Error(Issue issue) : Error(std::vector<Issue>{std::move(issue)}) {}

Error::Error(std::vector<Issue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {
  if (issues_.empty()) issues_.push_back({ErrorCode::BadOption, "", "unspecified error"});
}

bool Error::has(ErrorCode code) const noexcept {
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const Issue& i) { return i.code == code; });
}

QuadratureError::QuadratureError(std::string where, double achieved_error,
                                 double requested_tolerance)
    : Error(Issue{ErrorCode::QuadratureNonConvergence, std::move(where),
                  "panel refinement exhausted; achieved error " +
                      std::to_string(achieved_error) + " > requested " +
                      std::to_string(requested_tolerance)}),
      achieved_(achieved_error),
      requested_(requested_tolerance) {}

}  // namespace causal
