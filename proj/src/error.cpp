#include "hypzeta/error.hpp"

namespace hypzeta {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonReducedWord: return "NonReducedWord";
    case ErrorCode::BadLetter: return "BadLetter";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::FixedPointAtInfinity: return "FixedPointAtInfinity";
    case ErrorCode::DiscsNotSeparated: return "DiscsNotSeparated";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::CutoffUncertain: return "CutoffUncertain";
    case ErrorCode::NodeEscapes: return "NodeEscapes";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::NonElementaryRequired: return "NonElementaryRequired";
    case ErrorCode::DomainTooClose: return "DomainTooClose";
    case ErrorCode::IncompletePrimitives: return "IncompletePrimitives";
    case ErrorCode::InvalidCover: return "InvalidCover";
    case ErrorCode::BoundaryZero: return "BoundaryZero";
    case ErrorCode::MaxDepth: return "MaxDepth";
    case ErrorCode::LostZero: return "LostZero";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hypzeta
