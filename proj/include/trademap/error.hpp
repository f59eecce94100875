#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trademap {

enum class ErrorCode {
  Schema,
  Parse,
  Io,
  NoData,
  Ambiguity,
  DegenerateRoster,
  Lookup,
  TooSmall,
  Domain,
  IsolatedVertex,
  Convergence,
  InsufficientSpectrum,
  Connectivity,
  Dimension,
  DegenerateGeometry,
  SizeMismatch,
  RosterMismatch,
  InvalidArgument,
  Invariant,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trademap
