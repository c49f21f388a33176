#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symcap {

enum class ErrorCode {
  Dimension,               // shape or index out of range
  Input,                   // malformed or non-finite parameter
  Validation,              // value fails a domain invariant
  Degenerate,              // input makes the requested quantity undefined
  Numerical,               // algorithm missed its accuracy contract
  Unsupported,             // combination deliberately not handled
  InconsistentCertificate, // caller-supplied inclusions contradict each other
  Closure,                 // loop does not close
  SamplingTooCoarse,       // loop refinement exhausted or ambiguous
  InvalidMaslov,
  TheoremHypothesis,
  Evaluation,              // user-supplied function failed
  NonCompactOrbit,
  EmptyLevelSet,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace symcap
