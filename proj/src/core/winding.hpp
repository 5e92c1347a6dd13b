#pragma once

#include <functional>

#include "complex_ops.hpp"

namespace cdyn {

struct WindingOptions {
  int initial_samples = 4096;
  int max_samples = 1 << 20;
};

// Net change of arg(f), in whole turns, along the positively oriented circle
// |z - center| = radius.  Adjacent argument steps must stay below pi; the
// sampling is doubled until they do.  Throws ArgumentJump when max_samples
// still shows a step >= pi.
int winding_number(const std::function<Cx(Cx)>& f, Cx center, double radius,
                   const WindingOptions& opts = {});

}  // namespace cdyn
