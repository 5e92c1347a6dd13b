#include "roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace cdyn {

namespace {

using Clx = std::complex<long double>;

// Attainable evaluation magnitude at |z|: the residual of an exactly
// representable root still carries rounding of this size.
double eval_scale(const Poly& p, double abs_z) {
  double s = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    s = s * abs_z + std::abs(*it);
  return s;
}

// Newton polish in extended precision.  Brings each root to the long-double
// noise floor, which both sharpens the coefficient reconstruction and pulls
// multiple-root approximations inside the clustering tolerance.
Cx polish_extended(const Poly& p, Cx z0) {
  std::vector<Clx> c(p.coeffs().begin(), p.coeffs().end());
  auto evald = [&c](Clx z) {
    Clx v = c.back();
    Clx d = Clx(0.0L);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
      d = d * z + v;
      v = v * z + c[k];
    }
    return std::pair{v, d};
  };
  Clx z = Clx(z0);
  auto [v, d] = evald(z);
  for (int step = 0; step < 4; ++step) {
    if (d == Clx(0.0L)) break;
    const Clx candidate = z - v / d;
    auto [v2, d2] = evald(candidate);
    if (!(std::abs(v2) < std::abs(v))) break;
    z = candidate;
    v = v2;
    d = d2;
  }
  return Cx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
}

// Cluster roots whose pairwise distance is below tol*(1 + |root|) and replace
// each cluster by its centroid, repeated with multiplicity.
std::vector<Cx> cluster_roots(std::vector<Cx> roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol * (1.0 + std::abs(roots[i])))
        parent[find(i)] = find(j);

  std::vector<Cx> sum(n, Cx(0.0));
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    sum[r] += roots[i];
    ++count[r];
  }
  std::vector<Cx> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) continue;
    const Cx centroid = sum[i] / static_cast<double>(count[i]);
    for (int k = 0; k < count[i]; ++k) out.push_back(centroid);
  }
  return out;
}

}  // namespace

RootSet poly_roots(const Poly& p, const RootOptions& opts) {
  const int d = p.degree();
  if (d < 1 || p.is_zero())
    fail(Status::InvalidArgument, "poly_roots: degree must be at least 1");

  const double max_coeff = p.max_coeff_magnitude();
  // Acceptance floor: the flat tolerance for roots in the unit disc, widened
  // by the attainable evaluation magnitude where |root| > 1.
  auto tolerance_at = [&](const Poly& poly, double abs_z) {
    return opts.tol * std::max(max_coeff, eval_scale(poly, abs_z));
  };

  // Exact zeros of the constant term give roots at the origin directly.
  std::vector<Cx> coeffs = p.coeffs();
  int origin_roots = 0;
  while (origin_roots < d && coeffs[origin_roots] == Cx(0.0)) ++origin_roots;
  std::vector<Cx> roots(origin_roots, Cx(0.0));

  const Poly q(std::vector<Cx>(coeffs.begin() + origin_roots, coeffs.end()));
  const int dq = q.degree();

  if (dq == 1) {
    roots.push_back(-q.coeff(0) / q.coeff(1));
  } else if (dq >= 2) {
    // Seeds on the Cauchy-bound circle 1 + max|a_j/a_d|, angles offset.
    double radius = 0.0;
    for (int j = 0; j < dq; ++j)
      radius = std::max(radius, std::abs(q.coeff(j) / q.leading()));
    radius += 1.0;

    std::vector<Cx> z(dq);
    for (int k = 0; k < dq; ++k)
      z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / dq +
                                    opts.seed_angle_offset);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      bool all_done = true;
      double max_step = 0.0;
      for (int i = 0; i < dq; ++i) {
        auto [v, dv] = q.eval_with_derivative(z[i]);
        if (std::abs(v) <= tolerance_at(q, std::abs(z[i]))) continue;
        all_done = false;
        if (dv == Cx(0.0)) {
          z[i] += Cx(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
          max_step = 1.0;
          continue;
        }
        const Cx w = v / dv;
        Cx s(0.0);
        bool collided = false;
        for (int j = 0; j < dq; ++j) {
          if (j == i) continue;
          const Cx diff = z[i] - z[j];
          if (std::abs(diff) < 1e-12 * (1.0 + std::abs(z[i]))) {
            collided = true;
            break;
          }
          s += 1.0 / diff;
        }
        if (collided) {
          // Colliding approximations freeze the correction; kick one away
          // along a deterministic angle and retry next sweep.
          z[i] += std::polar(1e-6 * (1.0 + std::abs(z[i])), 2.399963 * (i + 1));
          max_step = 1.0;
          continue;
        }
        Cx denom = 1.0 - w * s;
        if (denom == Cx(0.0)) denom = Cx(1e-12, 0.0);
        const Cx step = w / denom;
        z[i] -= step;
        max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
      }
      if (all_done) break;
      if (max_step < 1e-16) break;  // stagnated; residual check decides below
    }

    // Newton polish in extended precision, kept only while it improves.
    for (int i = 0; i < dq; ++i) z[i] = polish_extended(q, z[i]);
    roots.insert(roots.end(), z.begin(), z.end());
  }

  std::sort(roots.begin(), roots.end(), lex_less);
  roots = cluster_roots(std::move(roots), opts.cluster_tol);
  std::sort(roots.begin(), roots.end(), lex_less);

  RootSet out;
  out.roots = std::move(roots);
  out.residuals.reserve(out.roots.size());
  for (const Cx& r : out.roots) {
    const double resid = std::abs(p(r));
    if (resid > tolerance_at(p, std::abs(r)))
      fail(Status::NonConvergence, "poly_roots: residual " +
                                       std::to_string(resid) +
                                       " above tolerance");
    out.residuals.push_back(resid);
  }
  return out;
}

}  // namespace cdyn
