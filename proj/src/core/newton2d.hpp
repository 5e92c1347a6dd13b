#pragma once

#include <cmath>

#include "complex_ops.hpp"
#include "errors.hpp"

namespace cdyn {

// One residual evaluation: F(z) plus the Wirtinger pair (dF/dz, dF/dzbar).
struct WirtingerEval {
  Cx value;
  Cx dz;
  Cx dzbar;
};

struct NewtonOptions {
  double tol_res = 1e-13;        // |F| at success
  double tol_step = 1e-10;       // final step length at success
  int max_iters = 50;
  double divergence_radius = 1e12;
  double singular_eps = 1e-14;   // |det J| < eps * scale^2
};

struct NewtonResult {
  Status status = Status::MaxIters;
  Cx root{};
  double residual = 0.0;
  int iters = 0;
};

// Newton iteration on F : C -> C viewed as a map of R^2.  The 2x2 real
// Jacobian assembled from the Wirtinger pair (a, b) has determinant
// |a|^2 - |b|^2, and the solve collapses to one complex expression.
template <typename Residual>
NewtonResult newton2d(Residual&& residual, Cx seed,
                      const NewtonOptions& opts = {}) {
  NewtonResult out;
  Cx z = seed;
  double prev_step = 0.0;
  for (int k = 0; k < opts.max_iters; ++k) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        std::abs(z) > opts.divergence_radius) {
      out.status = Status::Diverged;
      out.root = z;
      out.iters = k;
      return out;
    }
    const WirtingerEval e = residual(z);
    const double fmag = std::abs(e.value);
    if (fmag <= opts.tol_res && prev_step <= opts.tol_step) {
      out.status = Status::Ok;
      out.root = z;
      out.residual = fmag;
      out.iters = k;
      return out;
    }
    const double a2 = std::norm(e.dz);
    const double b2 = std::norm(e.dzbar);
    const double det = a2 - b2;
    const double scale2 = std::max(a2, b2);
    if (scale2 == 0.0 || std::abs(det) < opts.singular_eps * scale2) {
      // A vanishing determinant with the residual already at tolerance means
      // the iteration converged onto a degenerate zero.
      out.status = fmag <= opts.tol_res ? Status::Ok : Status::SingularJacobian;
      out.root = z;
      out.residual = fmag;
      out.iters = k;
      return out;
    }
    // Solve a*step + b*conj(step) = -F.
    const Cx step = (e.dzbar * std::conj(e.value) - std::conj(e.dz) * e.value) / det;
    z += step;
    prev_step = std::abs(step);
  }
  out.status = Status::MaxIters;
  out.root = z;
  out.iters = opts.max_iters;
  return out;
}

}  // namespace cdyn
