#include "subhyp/errors.hpp"

namespace subhyp {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::CurveTouchesBoundary: return "CurveTouchesBoundary";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SlackUnreachable: return "SlackUnreachable";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::DegenerateTrace: return "DegenerateTrace";
    case ErrorCode::NotStronglySubhyperbolic: return "NotStronglySubhyperbolic";
    case ErrorCode::ClearanceZero: return "ClearanceZero";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::MissingDerivatives: return "MissingDerivatives";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace subhyp
