#pragma once

#include <optional>

#include "dynamics.hpp"

namespace cdyn {

struct MemberResult {
  Cx c{};
  bool bounded = true;
  int escape_index = -1;  // first critical-orbit index with |z| > 2
  double potential = 0.0; // escape-rate potential of the parameter; 0 when bounded
};

// Critical-orbit membership test at a finite iteration budget.  The verdict
// "bounded" means no escape was observed within max_iter steps.
MemberResult mandelbrot_member(Cx c, int max_iter = kDefaultMaxIter);

// |1 - sqrt(1-4c)| < 1 (principal branch): an attracting fixed point exists.
bool cardioid_contains(Cx c);

// |c + 1| < 1/4: an attracting 2-cycle exists.
bool period2_disk_contains(Cx c);

// Smallest m <= max_period with |z_{N+m} - z_N| < 1e-6 after iterating the
// critical orbit N = max_iter steps; nothing when the orbit escapes or no
// near-return shows up.
std::optional<int> hyperbolic_period(Cx c, int max_period = 64,
                                     int max_iter = kDefaultMaxIter);

}  // namespace cdyn
