#pragma once

#include <stdexcept>
#include <string>

namespace rkband {

enum class ErrorCode {
  InvalidSeries,
  Dimension,
  Index,
  EvaluationUndefined,
  Configuration,
  ComplexityUnreachable,
  UndefinedAccuracy,
  Parse,
  Io,
};

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it onto a status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rkband
