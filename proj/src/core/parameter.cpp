#include "parameter.hpp"

#include <cmath>

#include "errors.hpp"

namespace cdyn {

MemberResult mandelbrot_member(Cx c, int max_iter) {
  if (max_iter < 1)
    fail(Status::InvalidArgument, "mandelbrot_member: max_iter must be >= 1");
  MemberResult r;
  r.c = c;
  Cx z(0.0);
  for (int k = 0; k <= max_iter; ++k) {
    if (std::abs(z) > 2.0) {  // sharp for the critical orbit
      r.bounded = false;
      r.escape_index = k;
      break;
    }
    if (k < max_iter) z = z * z + c;
  }
  if (!r.bounded) {
    // Potential of the parameter: escape rate of z = c.  Give the far-field
    // pass enough extra budget to push past the big radius.
    const QuadMap map{c};
    r.potential = green(map, c, std::max(max_iter, r.escape_index + 64)).value;
  }
  return r;
}

bool cardioid_contains(Cx c) {
  return std::abs(1.0 - std::sqrt(Cx(1.0) - 4.0 * c)) < 1.0;
}

bool period2_disk_contains(Cx c) { return std::abs(c + 1.0) < 0.25; }

std::optional<int> hyperbolic_period(Cx c, int max_period, int max_iter) {
  if (max_period < 1 || max_period > 64)
    fail(Status::InvalidArgument, "hyperbolic_period: max_period must be in [1, 64]");
  if (max_iter < 1)
    fail(Status::InvalidArgument, "hyperbolic_period: max_iter must be >= 1");
  Cx z(0.0);
  for (int k = 0; k < max_iter; ++k) {
    z = z * z + c;
    if (std::abs(z) > 2.0) return std::nullopt;
  }
  const Cx ref = z;
  Cx w = z;
  for (int m = 1; m <= max_period; ++m) {
    w = w * w + c;
    if (std::abs(w - ref) < 1e-6) return m;
    if (std::abs(w) > 2.0) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace cdyn
