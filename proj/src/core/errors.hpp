#pragma once

#include <stdexcept>
#include <string>

namespace cdyn {

// Failure categories shared between the C++ core and the C API.
// Keep the order in sync with cdyn_status in include/cdyn/cdyn.h.
enum class Status {
  Ok = 0,
  InvalidArgument,
  NonConvergence,
  SingularJacobian,
  MaxIters,
  Diverged,
  CountMismatch,
  NotAttracting,
  OutOfBasin,
  BranchAmbiguity,
  OutOfDisc,
  NoAttractor,
  IoError,
  PoleProximity,
  DegenerateRing,
  NearCriticalImage,
  ArgumentJump,
  EqualDegrees,
  NonPositiveInput,
  ParseError,
  InvalidConfig,
  Internal,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cdyn
