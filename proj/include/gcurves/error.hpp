#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcurves {

/// Failure categories raised by the library. Every throwing operation uses
/// exactly one of these so callers (and the CLI) can branch on the cause.
enum class ErrorCode {
  ContractViolation,      // caller broke a documented precondition
  Range,                  // parameter outside the supported range
  DegenerateInput,        // antipodal pair, zero-length data, ...
  OutOfChart,             // point not representable in the projective chart
  Domain,                 // no such triangle / undefined trigonometry
  Usage,                  // mismatched surfaces or bad argument combination
  NoConvexHull,           // point set not inside an open hemisphere
  NotGCurve,              // prefix not containable in a half-plane
  Monotonicity,           // involute arc length would not increase
  ParameterSearch,        // no admissible iteration parameters
  IterationDiagnostic,    // a discrete invariant of the iteration failed
  Convergence,            // iteration budget exhausted
  Resolution,             // integration step too coarse for the curvature
  NotAlmostSelfInvolute,  // congruence fit residual too large
  Parse,                  // malformed CSV or config input
  Generation,             // random curve generator gave up
  Io,                     // file system failure
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gcurves
