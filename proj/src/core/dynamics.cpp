#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "newton2d.hpp"
#include "roots.hpp"
#include "winding.hpp"

namespace cdyn {

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Superattracting: return "superattracting";
    case Stability::Attracting: return "attracting";
    case Stability::Indifferent: return "indifferent";
    case Stability::Repelling: return "repelling";
  }
  return "unknown";
}

double escape_radius(const QuadMap& map) {
  return std::max(2.0, std::abs(map.c));
}

Orbit iterate(const QuadMap& map, Cx z0, int n) {
  if (n < 0) fail(Status::InvalidArgument, "iterate: n must be >= 0");
  const double radius = escape_radius(map);
  Orbit orbit;
  orbit.z0 = z0;
  orbit.points.reserve(static_cast<std::size_t>(n) + 1);
  Cx z = z0;
  for (int k = 0; k <= n; ++k) {
    orbit.points.push_back(z);
    if (std::abs(z) > radius) {
      orbit.escaped = true;
      orbit.escape_index = k;
      break;
    }
    if (k < n) z = map(z);
  }
  return orbit;
}

Orbit iterate(const Poly& p, Cx z0, int n, double bailout) {
  if (n < 0) fail(Status::InvalidArgument, "iterate: n must be >= 0");
  Orbit orbit;
  orbit.z0 = z0;
  orbit.points.reserve(static_cast<std::size_t>(n) + 1);
  Cx z = z0;
  for (int k = 0; k <= n; ++k) {
    orbit.points.push_back(z);
    if (bailout > 0.0 && std::abs(z) > bailout) {
      orbit.escaped = true;
      orbit.escape_index = k;
      break;
    }
    if (k < n) z = p(z);
  }
  return orbit;
}

Stability classify(Cx multiplier) {
  const double m = std::abs(multiplier);
  if (m <= kSuperattractingEps) return Stability::Superattracting;
  if (std::abs(m - 1.0) <= kIndifferentBand) return Stability::Indifferent;
  return m < 1.0 ? Stability::Attracting : Stability::Repelling;
}

FixedPointPair fixed_points(const QuadMap& map) {
  const Cx s = std::sqrt(Cx(1.0) - 4.0 * map.c);
  FixedPointPair pair;
  pair.star.points = {0.5 + 0.5 * s};
  pair.star.period = 1;
  pair.star.multiplier = 1.0 + s;
  pair.star.stability = classify(pair.star.multiplier);
  pair.bullet.points = {0.5 - 0.5 * s};
  pair.bullet.period = 1;
  pair.bullet.multiplier = 1.0 - s;
  pair.bullet.stability = classify(pair.bullet.multiplier);
  return pair;
}

std::optional<Cycle> period2_points(const QuadMap& map) {
  const Cx disc = -3.0 - 4.0 * map.c;
  if (disc == Cx(0.0)) return std::nullopt;  // c = -3/4: points coincide
  const Cx s = std::sqrt(disc);
  Cx z0 = -0.5 + 0.5 * s;
  Cx z1 = -0.5 - 0.5 * s;
  if (lex_less(z1, z0)) std::swap(z0, z1);
  Cycle cycle;
  cycle.points = {z0, z1};
  cycle.period = 2;
  cycle.multiplier = 4.0 + 4.0 * map.c;
  cycle.stability = classify(cycle.multiplier);
  return cycle;
}

GreenValue green(const QuadMap& map, Cx z, int max_iter) {
  if (max_iter < 1) fail(Status::InvalidArgument, "green: max_iter must be >= 1");
  GreenValue g;
  Cx w = z;
  for (int n = 0; n <= max_iter; ++n) {
    const double mag = std::abs(w);
    if (mag > kEscapeRadiusBig) {
      g.value = std::ldexp(std::log(mag), -n);  // 2^-n log|z_n|
      g.iterations_used = n;
      g.converged = true;
      return g;
    }
    if (n < max_iter) w = map(w);
  }
  g.value = 0.0;
  g.iterations_used = max_iter;
  g.converged = false;
  return g;
}

// ---------------------------------------------------------------------------
// Periodic points and cycles
// ---------------------------------------------------------------------------

namespace {

std::pair<Cx, Cx> iterate_with_derivative(const QuadMap& map, Cx z, int m) {
  Cx v = z;
  Cx d = Cx(1.0);
  for (int i = 0; i < m; ++i) {
    d = 2.0 * v * d;
    v = v * v + map.c;
  }
  return {v, d};
}

Cx iterate_plain(const QuadMap& map, Cx z, int m) {
  for (int i = 0; i < m; ++i) z = z * z + map.c;
  return z;
}

// Union-find clustering with a sorted sliding window: chains of points with
// neighbor gaps <= tol merge even when the full cluster spans several tol.
// Each cluster is replaced by its centroid.
std::vector<Cx> cluster_points(std::vector<Cx> pts, double tol) {
  std::sort(pts.begin(), pts.end(), lex_less);
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[j].real() - pts[i].real() > tol) break;
      if (std::abs(pts[i] - pts[j]) <= tol) parent[find(i)] = find(j);
    }
  }
  std::vector<Cx> sum(n, Cx(0.0));
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    sum[r] += pts[i];
    ++count[r];
  }
  std::vector<Cx> out;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] > 0) out.push_back(sum[i] / static_cast<double>(count[i]));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Local winding of p^m(z) - z around each candidate; the total over all
// candidates must reach 2^m (roots counted with multiplicity).  Returns -1
// when a circle is too noisy to integrate, which sends the caller to the
// coarser merge stage.
int winding_total(const QuadMap& map, int m, std::vector<Cx>& pts,
                  double radius_cap, std::vector<int>& mult_out) {
  auto g = [&map, m](Cx z) { return iterate_plain(map, z, m) - z; };
  WindingOptions wopts;
  wopts.initial_samples = 256;
  wopts.max_samples = 1 << 14;
  int total = 0;
  mult_out.assign(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double nearest = radius_cap * 4.0;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(pts[i] - pts[j]));
    const double radius = std::max(std::min(radius_cap, nearest / 4.0), 1e-11);
    int w = 0;
    try {
      w = winding_number(g, pts[i], radius, wopts);
    } catch (const Error&) {
      return -1;  // |g| below rounding noise on the circle
    }
    mult_out[i] = w;
    total += w;
  }
  return total;
}

// Backward-orbit tree from the most repelling fixed point.  The preimages
// crowd onto the Julia set, exactly where the repelling periodic points sit,
// so they complete the coverage the uniform grid misses at high periods.
std::vector<Cx> backward_orbit_seeds(const QuadMap& map, int target) {
  const Cx sq = std::sqrt(Cx(1.0) - 4.0 * map.c);
  const Cx repelling =
      std::abs(1.0 + sq) >= std::abs(1.0 - sq) ? 0.5 + 0.5 * sq : 0.5 - 0.5 * sq;
  std::vector<Cx> layer{repelling};
  while (static_cast<int>(layer.size()) < target) {
    std::vector<Cx> next;
    next.reserve(layer.size() * 2);
    for (const Cx& z : layer) {
      const Cx root = std::sqrt(z - map.c);
      next.push_back(root);
      next.push_back(-root);
    }
    layer = std::move(next);
  }
  return layer;
}

std::vector<Cx> find_periodic_points(const QuadMap& map, int m,
                                     const std::vector<Cx>& extra_seeds) {
  const double radius = escape_radius(map);
  const double scale = 1.0 + radius + std::abs(map.c);

  NewtonOptions nopts;
  nopts.tol_res = 1e-10 * scale;
  nopts.tol_step = 1e-8;
  nopts.max_iters = 120;

  auto residual = [&map, m](Cx z) -> WirtingerEval {
    auto [v, d] = iterate_with_derivative(map, z, m);
    return {v - z, d - Cx(1.0), Cx(0.0)};
  };

  std::vector<Cx> found;
  auto try_seed = [&](Cx seed) {
    const NewtonResult r = newton2d(residual, seed, nopts);
    if (r.status == Status::Ok) found.push_back(r.root);
  };

  for (int i = 0; i < kCycleGrid; ++i) {
    for (int j = 0; j < kCycleGrid; ++j) {
      const Cx seed(-radius + 2.0 * radius * (i + 0.5) / kCycleGrid,
                    -radius + 2.0 * radius * (j + 0.5) / kCycleGrid);
      if (std::abs(seed) <= radius) try_seed(seed);
    }
  }
  for (const Cx& s : backward_orbit_seeds(map, 4096)) try_seed(s);
  for (const Cx& s : extra_seeds) try_seed(s);

  // Sharpen roots past the multistart step gate, but only keep steps that
  // actually reduce |g|; near multiple roots the residual is rounding noise
  // and plain steps would random-walk the point away.
  for (Cx& z : found) {
    for (int k = 0; k < 3; ++k) {
      auto [v, d] = iterate_with_derivative(map, z, m);
      const Cx dg = d - Cx(1.0);
      if (std::abs(dg) < 1e-12) break;
      const Cx candidate = z - (v - z) / dg;
      auto [v2, d2] = iterate_with_derivative(map, candidate, m);
      if (!(std::abs(v2 - candidate) < std::abs(v - z))) break;
      z = candidate;
    }
  }
  return found;
}

struct CheckedPoints {
  std::vector<Cx> points;
  std::vector<int> multiplicities;
};

CheckedPoints periodic_points_checked(const QuadMap& map, int m,
                                      const std::vector<Cx>& extra_seeds) {
  const long expected = 1L << m;
  std::vector<Cx> raw = find_periodic_points(map, m, extra_seeds);

  CheckedPoints out;
  // Tight dedupe first; fall back to coarser merges near multiple roots,
  // whose noise basin under double rounding widens with the multiplicity.
  for (const auto& [dedupe_tol, radius_cap] :
       {std::pair{1e-8, 1e-5}, std::pair{1e-6, 1e-4}, std::pair{1e-4, 1e-3},
        std::pair{1e-3, 1e-2}}) {
    std::vector<Cx> pts = cluster_points(raw, dedupe_tol);
    std::vector<int> mult;
    if (winding_total(map, m, pts, radius_cap, mult) == expected) {
      out.points = std::move(pts);
      out.multiplicities = std::move(mult);
      break;
    }
  }
  if (out.points.empty())
    fail(Status::CountMismatch,
         "periodic points: winding total != 2^" + std::to_string(m) +
             " for the solutions of p^m(z) = z");

  if (m <= 4) {
    // Independent route: expand p^m(z) - z and run the simultaneous solver.
    Poly composed = map.to_poly();
    for (int i = 1; i < m; ++i) composed = composed.compose(map.to_poly());
    std::vector<Cx> gc = composed.coeffs();
    gc[1] -= Cx(1.0);
    const RootSet rs = poly_roots(Poly(std::move(gc)));
    for (const Cx& r : rs.roots) {
      bool matched = false;
      for (std::size_t i = 0; i < out.points.size() && !matched; ++i) {
        const double dist = std::abs(r - out.points[i]);
        // A root of multiplicity k is only determined to about
        // (residual tolerance)^(1/k) by either route.
        const double tol =
            out.multiplicities[i] > 1 ? 1e-2 : 1e-6 * (1.0 + std::abs(r));
        matched = dist <= tol;
      }
      if (!matched)
        fail(Status::CountMismatch,
             "periodic points: coefficient-expansion root has no functional "
             "match at period " + std::to_string(m));
    }
  }
  return out;
}

// Cycles of exact period m assembled from the audited solution set.
std::vector<Cycle> cycles_of_period(const QuadMap& map, int m,
                                    const std::vector<Cx>& solved) {
  std::vector<Cx> exact;
  for (const Cx& z : solved) {
    bool earlier = false;
    for (int j = 1; j < m && !earlier; ++j) {
      if (m % j != 0) continue;
      if (std::abs(iterate_plain(map, z, j) - z) <= 1e-6 * (1.0 + std::abs(z)))
        earlier = true;
    }
    if (!earlier) exact.push_back(z);
  }
  std::sort(exact.begin(), exact.end(), lex_less);

  std::vector<Cycle> cycles;
  std::vector<bool> claimed(exact.size(), false);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (claimed[i]) continue;
    claimed[i] = true;
    Cycle cyc;
    cyc.period = m;
    cyc.points.push_back(exact[i]);
    Cx w = exact[i];
    for (int step = 1; step < m; ++step) {
      w = map(w);
      // Snap to the matching solved point so cycle members stay polished.
      std::size_t best = exact.size();
      double best_d = 1e-6 * (1.0 + std::abs(w));
      for (std::size_t j = 0; j < exact.size(); ++j) {
        if (claimed[j]) continue;
        const double d = std::abs(exact[j] - w);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (best < exact.size()) {
        claimed[best] = true;
        w = exact[best];
      }
      cyc.points.push_back(w);
    }
    cyc.multiplier = Cx(1.0);
    for (const Cx& z : cyc.points) cyc.multiplier *= 2.0 * z;
    cyc.stability = classify(cyc.multiplier);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace

std::vector<Cycle> cycles_up_to(const QuadMap& map, int max_period) {
  if (max_period < 1 || max_period > kMaxCyclePeriod)
    fail(Status::InvalidArgument, "cycles_up_to: period must be in [1, 8]");

  std::vector<Cycle> cycles;
  std::vector<Cx> known;  // points of lower periods reused as seeds

  for (int m = 1; m <= max_period; ++m) {
    CheckedPoints checked = periodic_points_checked(map, m, known);
    known.insert(known.end(), checked.points.begin(), checked.points.end());
    for (Cycle& cyc : cycles_of_period(map, m, checked.points))
      cycles.push_back(std::move(cyc));
  }

  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) {
    if (a.period != b.period) return a.period < b.period;
    return lex_less(a.points.front(), b.points.front());
  });
  return cycles;
}

std::optional<Cycle> attracting_cycle(const QuadMap& map, int max_period) {
  if (max_period < 1 || max_period > kMaxCyclePeriod)
    fail(Status::InvalidArgument, "attracting_cycle: period must be in [1, 8]");
  std::vector<Cx> known;
  for (int m = 1; m <= max_period; ++m) {
    CheckedPoints checked = periodic_points_checked(map, m, known);
    known.insert(known.end(), checked.points.begin(), checked.points.end());
    for (Cycle& cyc : cycles_of_period(map, m, checked.points)) {
      if (cyc.stability == Stability::Superattracting ||
          cyc.stability == Stability::Attracting)
        return std::move(cyc);  // a quadratic map has at most one
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linearizing and conjugating coordinates
// ---------------------------------------------------------------------------

namespace {

// p(fixed + u) - fixed with the constant term pinned to zero; |p(fixed)-fixed|
// must vanish to tolerance for `fixed` to qualify.
Poly shifted_map(const Poly& p, Cx fixed) {
  Poly q = p.taylor_shift(fixed);
  std::vector<Cx> c = q.coeffs();
  const Cx residue = c[0] - fixed;
  if (std::abs(residue) > 1e-9 * (1.0 + std::abs(fixed)))
    fail(Status::InvalidArgument,
         "conjugacy: supplied point is not a fixed point (|p(z)-z| = " +
             std::to_string(std::abs(residue)) + ")");
  c[0] = Cx(0.0);
  return Poly(std::move(c));
}

// phi = num / lambda^n through log magnitude and accumulated angle, which
// survives |lambda|^n underflow.
Cx stable_ratio(Cx num, Cx lambda, int n) {
  if (num == Cx(0.0)) return Cx(0.0);
  const double logmag = std::log(std::abs(num)) - n * std::log(std::abs(lambda));
  const double ang = std::arg(num) - n * std::arg(lambda);
  return std::polar(std::exp(logmag), ang);
}

double stable_ratio_mag(Cx num, double lambda_mag, int n) {
  if (num == Cx(0.0)) return 0.0;
  return std::exp(std::log(std::abs(num)) - n * std::log(lambda_mag));
}

void check_basin(const Poly& shifted, Cx delta0, int n, Cx fixed) {
  if (delta0 == Cx(0.0)) return;
  const double d0 = std::abs(delta0);
  const double settle = 1e-9 * (1.0 + std::abs(fixed));
  const int budget = 10 * std::max(n, 1);
  Cx t = delta0;
  for (int k = 0; k < budget; ++k) {
    t = shifted(t);
    const double mag = std::abs(t);
    if (mag <= settle) return;
    if (mag > 1e8)
      fail(Status::OutOfBasin, "koenig: orbit leaves toward infinity");
  }
  if (!(std::abs(t) < d0))
    fail(Status::OutOfBasin,
         "koenig: orbit fails to approach the fixed point within 10*n steps");
}

}  // namespace

ConjugacyValue koenig(const Poly& p, Cx fixed, Cx z, int n) {
  if (n < 0) fail(Status::InvalidArgument, "koenig: n must be >= 0");
  const Poly shifted = shifted_map(p, fixed);
  const Cx lambda = shifted.coeff(1);
  const double lm = std::abs(lambda);
  if (lm == 0.0 || lm >= 1.0)
    fail(Status::NotAttracting,
         "koenig: multiplier magnitude " + std::to_string(lm) +
             " outside (0, 1)");

  const Cx delta0 = z - fixed;
  if (delta0 == Cx(0.0)) return {Cx(0.0), 0.0};
  check_basin(shifted, delta0, n, fixed);

  Cx dn = delta0;
  for (int k = 0; k < n; ++k) dn = shifted(dn);
  const Cx dn1 = shifted(dn);

  ConjugacyValue out;
  out.phi = stable_ratio(dn, lambda, n);
  out.residual = stable_ratio_mag(dn1 - lambda * dn, lm, n);
  return out;
}

ConjugacyValue koenig(const QuadMap& map, Cx fixed, Cx z, int n) {
  return koenig(map.to_poly(), fixed, z, n);
}

double contraction_radius(const Poly& p, Cx fixed) {
  const Poly shifted = shifted_map(p, fixed);
  for (double r = 0.1; r >= 1e-6; r *= 0.5) {
    bool ok = true;
    for (int k = 0; k < 20 && ok; ++k) {
      Cx d = std::polar(r, 2.0 * std::numbers::pi * k / 20.0);
      double prev = std::abs(d);
      for (int step = 0; step < 200; ++step) {
        d = shifted(d);
        const double mag = std::abs(d);
        if (mag == 0.0 || mag < r * 1e-9) break;
        if (!(mag < prev)) {
          ok = false;
          break;
        }
        prev = mag;
      }
    }
    if (ok) return r;
  }
  return 0.0;
}

ConjugacyValue boettcher(const Poly& p, Cx fixed, Cx z, int n,
                         std::optional<double> disc_radius) {
  if (n < 0) fail(Status::InvalidArgument, "boettcher: n must be >= 0");
  Poly shifted = shifted_map(p, fixed);
  std::vector<Cx> c = shifted.coeffs();
  if (std::abs(c.size() > 1 ? c[1] : Cx(0.0)) > kSuperattractingEps)
    fail(Status::InvalidArgument,
         "boettcher: fixed point is not superattracting");
  if (c.size() > 1) c[1] = Cx(0.0);
  const Poly map(c);
  if (map.degree() < 2 || std::abs(map.coeff(2)) <= 1e-12)
    fail(Status::InvalidArgument, "boettcher: local degree is not 2");
  const Cx c2 = map.coeff(2);

  const double radius = disc_radius ? *disc_radius : contraction_radius(p, fixed);
  const Cx delta0 = z - fixed;
  if (std::abs(delta0) >= radius)
    fail(Status::OutOfDisc, "boettcher: |z - fixed| >= disc radius " +
                                std::to_string(radius));
  if (delta0 == Cx(0.0)) return {Cx(0.0), 0.0};

  // Work with the rescaled orbit w_t = c2 * u_t, for which the doubling
  // relation reads w_t = w_{t-1}^2 (1 + g(u_{t-1})) with g -> 0.  The 2^n-th
  // root then factors into halving ratios
  //     phi_n = w_0 * prod_t rho_t^(1/2^t),   rho_t = 1 + g(u_{t-1}),
  // each ratio taken by the branch nearest the previous one.  Everything is
  // accumulated through logarithms, so deep superattracting orbits that
  // underflow 2^n-fold powers stay representable.
  const int distinct = std::max(map.degree() - 2, 0);
  std::vector<Cx> tail(distinct + 1);  // g(w) = tail(w) / c2, tail = sum c_j w^(j-2)
  for (int j = 0; j <= distinct; ++j) tail[j] = map.coeff(j + 2);
  const Poly tail_poly(tail);

  std::vector<Cx> log_rho(static_cast<std::size_t>(n) + 1);
  Cx u = delta0;
  double prev_angle = 0.0;
  for (int t = 1; t <= n + 1; ++t) {
    const Cx ratio = tail_poly(u) / c2;  // -> 1 as the orbit contracts
    if (std::abs(ratio) <= 1e-9)
      fail(Status::BranchAmbiguity,
           "boettcher: halving ratio vanished; branch selection undefined");
    double angle = std::arg(ratio);
    angle += 2.0 * std::numbers::pi *
             std::round((prev_angle - angle) / (2.0 * std::numbers::pi));
    prev_angle = angle;
    log_rho[t - 1] = Cx(std::log(std::abs(ratio)), angle);
    u = map(u);  // underflow to 0 is benign: the ratios collapse to 1 exactly
  }

  const Cx w0 = c2 * delta0;
  Cx log_phi = Cx(std::log(std::abs(w0)), std::arg(w0));
  for (int t = 1; t <= n; ++t) log_phi += log_rho[t - 1] / std::pow(2.0, t);

  ConjugacyValue out;
  out.phi = std::polar(std::exp(log_phi.real()), log_phi.imag());

  // phi_n at p(z) reuses the same lifted ratio sequence shifted by one, so
  // the two sides of the conjugacy see consistent branches.
  const Cx w1 = c2 * map(delta0);
  if (w1 == Cx(0.0)) return {out.phi, std::norm(out.phi)};
  Cx log_phi_next = Cx(std::log(std::abs(w1)), std::arg(w1));
  for (int t = 1; t <= n; ++t) log_phi_next += log_rho[t] / std::pow(2.0, t);
  const Cx phi_next = std::polar(std::exp(log_phi_next.real()), log_phi_next.imag());
  out.residual = std::abs(phi_next - out.phi * out.phi);
  return out;
}

ConjugacyValue boettcher(const QuadMap& map, Cx fixed, Cx z, int n,
                         std::optional<double> disc_radius) {
  return boettcher(map.to_poly(), fixed, z, n, disc_radius);
}

}  // namespace cdyn
