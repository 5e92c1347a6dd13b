#pragma once

#include <vector>

#include "poly.hpp"

namespace cdyn {

struct RootSet {
  std::vector<Cx> roots;          // length == degree, multiplicities repeated
  std::vector<double> residuals;  // |p(root)| per entry
};

struct RootOptions {
  double tol = 1e-13;         // residual tolerance relative to max |coefficient|
  int max_sweeps = 1000;
  double cluster_tol = 1e-7;  // multiplicity clustering, relative to 1 + |root|
  double seed_angle_offset = 0.4;  // guards against symmetric stagnation
};

// Simultaneous Aberth-Ehrlich iteration seeded on the Cauchy-bound circle,
// finished with one Newton polish per root.  Roots closer than the cluster
// tolerance are merged and reported with multiplicity.  Output is sorted by
// (re, im).  Throws NonConvergence when a residual stays above tolerance.
RootSet poly_roots(const Poly& p, const RootOptions& opts = {});

}  // namespace cdyn
