#include "errors.hpp"

namespace cdyn {

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InvalidArgument: return "invalid_argument";
    case Status::NonConvergence: return "non_convergence";
    case Status::SingularJacobian: return "singular_jacobian";
    case Status::MaxIters: return "max_iters";
    case Status::Diverged: return "diverged";
    case Status::CountMismatch: return "count_mismatch";
    case Status::NotAttracting: return "not_attracting";
    case Status::OutOfBasin: return "out_of_basin";
    case Status::BranchAmbiguity: return "branch_ambiguity";
    case Status::OutOfDisc: return "out_of_disc";
    case Status::NoAttractor: return "no_attractor";
    case Status::IoError: return "io_error";
    case Status::PoleProximity: return "pole_proximity";
    case Status::DegenerateRing: return "degenerate_ring";
    case Status::NearCriticalImage: return "near_critical_image";
    case Status::ArgumentJump: return "argument_jump";
    case Status::EqualDegrees: return "equal_degrees";
    case Status::NonPositiveInput: return "non_positive_input";
    case Status::ParseError: return "parse_error";
    case Status::InvalidConfig: return "invalid_config";
    case Status::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace cdyn
