#include "periodic_spectra/error.hpp"

namespace periodic_spectra {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateVertexId: return "DuplicateVertexId";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::ZeroIndexLoop: return "ZeroIndexLoop";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DisconnectedQuotient: return "DisconnectedQuotient";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::WrongGraphFlavor: return "WrongGraphFlavor";
    case ErrorCode::IntegerOverflow: return "IntegerOverflow";
    case ErrorCode::PowerCapExceeded: return "PowerCapExceeded";
    case ErrorCode::OracleCapExceeded: return "OracleCapExceeded";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace periodic_spectra
