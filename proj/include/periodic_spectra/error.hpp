#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace periodic_spectra {

enum class ErrorCode {
  InvalidArgument,
  DuplicateVertexId,
  DanglingEndpoint,
  ZeroIndexLoop,
  DimensionMismatch,
  DisconnectedQuotient,
  SingularBasis,
  WrongGraphFlavor,
  IntegerOverflow,
  PowerCapExceeded,
  OracleCapExceeded,
  GridTooCoarse,
  EigensolverFailure,
  DivergentSeries,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this type; `code()` lets callers
/// (the CLI in particular) classify it without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Resource limits shared by the symbolic and brute-force paths.
struct Limits {
  int power_cap = 12;  // largest n for symbolic Tr M^n
  int oracle_cap = 8;  // largest cycle length for exhaustive enumeration
};

}  // namespace periodic_spectra
