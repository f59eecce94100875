#include "trademap/error.hpp"

namespace trademap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::NoData: return "no data";
    case ErrorCode::Ambiguity: return "ambiguous data";
    case ErrorCode::DegenerateRoster: return "degenerate roster";
    case ErrorCode::Lookup: return "lookup error";
    case ErrorCode::TooSmall: return "too small";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::IsolatedVertex: return "isolated vertex";
    case ErrorCode::Convergence: return "convergence failure";
    case ErrorCode::InsufficientSpectrum: return "insufficient spectrum";
    case ErrorCode::Connectivity: return "disconnected graph";
    case ErrorCode::Dimension: return "dimension error";
    case ErrorCode::DegenerateGeometry: return "degenerate geometry";
    case ErrorCode::SizeMismatch: return "size mismatch";
    case ErrorCode::RosterMismatch: return "roster mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Invariant: return "internal invariant violated";
  }
  return "unknown error";
}

}  // namespace trademap
