#pragma once

#include <vector>

#include "lens.hpp"
#include "poly.hpp"

namespace cdyn {

struct WilmshurstRoot {
  Cx z{};
  Sense sense = Sense::Preserving;
  double derivative_ratio = 0.0;  // |q'(z) / p'(z)|
  double residual = 0.0;          // |p(z) - conj(q(z))|
  int index = 0;                  // local winding; multiplicity at degenerate roots
};

struct WilmshurstCounts {
  int total = 0;
  int deg_p = 0;
  int deg_q = 0;
  int conjugate_form_bound = -1;  // 3n - 2 when q(z) = z, else -1
  int lll_bound = 0;              // 2m(n-1) + n, reported only
};

struct WilmshurstResult {
  std::vector<WilmshurstRoot> roots;
  WilmshurstCounts counts;
};

// Solutions of p(z) = conj(q(z)) with deg p > deg q, by multistart Newton on
// the Wirtinger pair (p'(z), -conj(q'(z))).  Equal degrees are rejected since
// the solution set may then be infinite.
WilmshurstResult wilmshurst_solve(const Poly& p, const Poly& q,
                                  const SolveOptions& opts = {});

}  // namespace cdyn
