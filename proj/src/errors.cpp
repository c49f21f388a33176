#include "symcap/errors.hpp"

namespace symcap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Input: return "input";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Numerical: return "numerical";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::InconsistentCertificate: return "inconsistent-certificate";
    case ErrorCode::Closure: return "closure";
    case ErrorCode::SamplingTooCoarse: return "sampling-too-coarse";
    case ErrorCode::InvalidMaslov: return "invalid-maslov";
    case ErrorCode::TheoremHypothesis: return "theorem-hypothesis";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::NonCompactOrbit: return "non-compact-orbit";
    case ErrorCode::EmptyLevelSet: return "empty-level-set";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace symcap
