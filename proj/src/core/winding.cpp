#include "winding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace cdyn {

int winding_number(const std::function<Cx(Cx)>& f, Cx center, double radius,
                   const WindingOptions& opts) {
  if (radius <= 0.0)
    fail(Status::InvalidArgument, "winding_number: radius must be positive");
  const double step_limit = std::numbers::pi * (1.0 - 1e-9);
  for (int n = opts.initial_samples; n <= opts.max_samples; n *= 2) {
    double total = 0.0;
    bool ok = true;
    Cx prev = f(center + Cx(radius, 0.0));
    if (prev == Cx(0.0)) continue;  // zero on the contour; perturb by refining
    for (int k = 1; k <= n && ok; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / n;
      const Cx cur = f(center + std::polar(radius, theta));
      if (cur == Cx(0.0)) {
        ok = false;
        break;
      }
      const double dtheta = std::arg(cur / prev);
      if (std::abs(dtheta) >= step_limit) {
        ok = false;
        break;
      }
      total += dtheta;
      prev = cur;
    }
    if (ok) return static_cast<int>(std::llround(total / (2.0 * std::numbers::pi)));
  }
  fail(Status::ArgumentJump,
       "winding_number: argument step >= pi persists at max sampling");
}

}  // namespace cdyn
