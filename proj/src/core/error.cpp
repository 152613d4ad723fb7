#include "probative/error.hpp"

namespace probative {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::InvalidModel: return "INVALID_MODEL";
    case ErrorCode::Cycle: return "CYCLE";
    case ErrorCode::UnknownNode: return "UNKNOWN_NODE";
    case ErrorCode::UnknownState: return "UNKNOWN_STATE";
    case ErrorCode::MissingParent: return "MISSING_PARENT";
    case ErrorCode::IncompleteAssignment: return "INCOMPLETE_ASSIGNMENT";
    case ErrorCode::ImpossibleEvidence: return "IMPOSSIBLE_EVIDENCE";
    case ErrorCode::Structure: return "STRUCTURE";
    case ErrorCode::ZeroOverZero: return "ZERO_OVER_ZERO";
    case ErrorCode::PriorOverrideOnChild: return "PRIOR_OVERRIDE_ON_CHILD";
    case ErrorCode::UnknownFixture: return "UNKNOWN_FIXTURE";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Schema: return "SCHEMA";
  }
  return "UNKNOWN";
}

}  // namespace probative
