#include "wilmshurst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "winding.hpp"

namespace cdyn {

namespace {

constexpr double kDedupeTol = 1e-8;

// Cauchy-style bound: every solution of p(z) = conj(q(z)) has
// |p_lead| |z|^n <= sum of the lower |a_j| + |b_j| there, so
// |z| < 1 + max_j (|a_j| + |b_j|) / |p_lead|.
double solution_bound(const Poly& p, const Poly& q) {
  const double lead = std::abs(p.leading());
  double m = 0.0;
  for (int j = 0; j < p.degree(); ++j)
    m = std::max(m, std::abs(p.coeff(j)) + std::abs(q.coeff(j)));
  return 1.0 + m / lead;
}

}  // namespace

WilmshurstResult wilmshurst_solve(const Poly& p, const Poly& q,
                                  const SolveOptions& opts) {
  const int n = p.degree();
  const int m = q.degree();
  if (n == m)
    fail(Status::EqualDegrees,
         "wilmshurst_solve: equal degrees may carry infinitely many solutions");
  if (n < m)
    fail(Status::InvalidArgument,
         "wilmshurst_solve: conjugate the equation so deg p > deg q");
  if (n < 1)
    fail(Status::InvalidArgument, "wilmshurst_solve: deg p must be >= 1");

  const Poly dp = p.derivative();
  const Poly dq = q.derivative();
  auto residual = [&](Cx z) -> WirtingerEval {
    return {p(z) - std::conj(q(z)), dp(z), -std::conj(dq(z))};
  };

  const double rho = solution_bound(p, q);
  NewtonOptions nopts;
  nopts.tol_res = 1e-12;
  nopts.tol_step = 1e-9;
  nopts.max_iters = 80;  // multiple roots converge linearly

  std::vector<Cx> roots;
  for (int i = 0; i < opts.grid; ++i) {
    for (int j = 0; j < opts.grid; ++j) {
      const Cx seed(-rho + 2.0 * rho * (i + 0.5) / opts.grid,
                    -rho + 2.0 * rho * (j + 0.5) / opts.grid);
      if (std::abs(seed) > rho) continue;
      const NewtonResult r = newton2d(residual, seed, nopts);
      if (r.status == Status::Ok) roots.push_back(r.root);
    }
  }

  std::sort(roots.begin(), roots.end(), lex_less);
  std::vector<Cx> unique;
  for (const Cx& z : roots) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
      if (std::abs(*it - z) <= kDedupeTol) {
        dup = true;
        break;
      }
      if (z.real() - it->real() > kDedupeTol) break;
    }
    if (!dup) unique.push_back(z);
  }

  auto f = [&](Cx z) { return p(z) - std::conj(q(z)); };
  WindingOptions wopts;
  wopts.initial_samples = 256;

  WilmshurstResult out;
  for (const Cx& z : unique) {
    WilmshurstRoot root;
    root.z = z;
    root.residual = std::abs(f(z));
    const double pd = std::abs(dp(z));
    const double qd = std::abs(dq(z));
    root.derivative_ratio =
        pd > 0.0 ? qd / pd : (qd > 0.0 ? std::numeric_limits<double>::infinity()
                                       : 0.0);
    root.sense =
        root.derivative_ratio < 1.0 ? Sense::Preserving : Sense::Reversing;

    double nearest = 4e-5;
    for (const Cx& other : unique)
      if (other != z) nearest = std::min(nearest, std::abs(other - z));
    root.index = winding_number(f, z, std::max(std::min(1e-5, nearest / 4.0), 1e-11),
                                wopts);
    out.roots.push_back(root);
  }

  out.counts.total = static_cast<int>(out.roots.size());
  out.counts.deg_p = n;
  out.counts.deg_q = m;
  const bool q_is_identity = (m == 1 && q.coeff(0) == Cx(0.0) && q.coeff(1) == Cx(1.0));
  out.counts.conjugate_form_bound = q_is_identity ? 3 * n - 2 : -1;
  out.counts.lll_bound = 2 * m * (n - 1) + n;
  return out;
}

}  // namespace cdyn
