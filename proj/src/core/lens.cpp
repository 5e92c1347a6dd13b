#include "lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "winding.hpp"

namespace cdyn {

namespace {

constexpr double kPoleReject = 1e-10;
constexpr double kDedupeTol = 1e-8;
constexpr double kResidualRel = 1e-12;
constexpr double kCriticalBand = 1e-6;

double total_strength(const LensConfig& cfg) {
  double s = 0.0;
  for (const auto& m : cfg.masses) s += m.strength;
  return s;
}

// Bound on |z - w| for any image: max|z_j - w| + sqrt(sum sigma), plus margin.
double seed_disc_radius(const LensConfig& local) {
  double max_pole = 0.0;
  for (const auto& m : local.masses)
    max_pole = std::max(max_pole, std::abs(m.position));
  return max_pole + 1.0 + std::sqrt(total_strength(local));
}

WirtingerEval residual_at(const LensConfig& cfg, Cx z) {
  Cx r(0.0);
  Cx rp(0.0);
  for (const auto& m : cfg.masses) {
    const Cx d = z - m.position;
    if (std::abs(d) < kPoleReject)
      fail(Status::PoleProximity, "lens: evaluation within 1e-10 of a pole");
    const Cx inv = m.strength / d;
    r += inv;
    rp -= inv / d;  // -sigma / (z - z_j)^2
  }
  return {z - cfg.source - std::conj(r), Cx(1.0), -std::conj(rp)};
}

double deflection_derivative_mag(const LensConfig& cfg, Cx z) {
  Cx rp(0.0);
  for (const auto& m : cfg.masses) {
    const Cx d = z - m.position;
    rp -= m.strength / (d * d);
  }
  return std::abs(rp);
}

}  // namespace

void validate(const LensConfig& cfg) {
  if (cfg.masses.empty())
    fail(Status::InvalidConfig, "lens: at least one mass is required");
  for (const auto& m : cfg.masses)
    if (!(m.strength > 0.0))
      fail(Status::InvalidConfig, "lens: strengths must be positive");
  for (std::size_t i = 0; i < cfg.masses.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.masses.size(); ++j)
      if (std::abs(cfg.masses[i].position - cfg.masses[j].position) <= 1e-9)
        fail(Status::InvalidConfig, "lens: mass positions must be distinct");
}

WirtingerEval lens_residual(const LensConfig& cfg, Cx z) {
  validate(cfg);
  return residual_at(cfg, z);
}

std::optional<double> einstein_ring_check(const LensConfig& cfg) {
  if (cfg.masses.size() == 1 && cfg.masses[0].position == cfg.source)
    return std::sqrt(cfg.masses[0].strength);
  return std::nullopt;
}

std::vector<LensImage> solve_images(const LensConfig& cfg,
                                    const SolveOptions& opts) {
  validate(cfg);
  if (opts.grid < 2)
    fail(Status::InvalidArgument, "solve_images: grid must be >= 2");
  if (einstein_ring_check(cfg))
    fail(Status::DegenerateRing,
         "solve_images: single on-source mass yields a continuum of images");

  // Work with the source at the origin; shift image positions back at the end.
  LensConfig local = cfg;
  local.source = Cx(0.0);
  for (auto& m : local.masses) m.position -= cfg.source;

  const double rho = seed_disc_radius(local);
  std::vector<Cx> seeds;
  seeds.reserve(static_cast<std::size_t>(opts.grid) * opts.grid +
                local.masses.size() * 4 * opts.pole_ring_seeds);
  for (int i = 0; i < opts.grid; ++i) {
    for (int j = 0; j < opts.grid; ++j) {
      const Cx s(-rho + 2.0 * rho * (i + 0.5) / opts.grid,
                 -rho + 2.0 * rho * (j + 0.5) / opts.grid);
      if (std::abs(s) <= rho) seeds.push_back(s);
    }
  }
  for (std::size_t j = 0; j < local.masses.size(); ++j) {
    double local_scale = 1.0;
    if (local.masses.size() > 1) {
      local_scale = std::numeric_limits<double>::max();
      for (std::size_t k = 0; k < local.masses.size(); ++k)
        if (k != j)
          local_scale = std::min(local_scale,
                                 std::abs(local.masses[j].position -
                                          local.masses[k].position));
    }
    for (int k = 1; k <= 4; ++k) {
      const double ring = std::pow(10.0, -k) * local_scale;
      for (int t = 0; t < opts.pole_ring_seeds; ++t)
        seeds.push_back(local.masses[j].position +
                        std::polar(ring, 2.0 * std::numbers::pi * t /
                                             opts.pole_ring_seeds));
    }
  }

  NewtonOptions nopts;
  nopts.tol_res = 1e-12;
  nopts.tol_step = 1e-9;
  nopts.max_iters = 50;

  auto residual = [&local](Cx z) { return residual_at(local, z); };
  std::vector<Cx> roots;
  for (const Cx& seed : seeds) {
    try {
      const NewtonResult r = newton2d(residual, seed, nopts);
      if (r.status == Status::Ok) roots.push_back(r.root);
    } catch (const Error&) {
      // stepped onto a pole; the seed is discarded
    }
  }

  // Deterministic merge: sort, then dedupe.
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

  std::vector<LensImage> images;
  images.reserve(unique.size());
  for (const Cx& zl : unique) {
    const Cx z = zl + cfg.source;
    LensImage img;
    img.z = z;
    img.residual = std::abs(residual_at(cfg, z).value);
    if (img.residual > kResidualRel * (1.0 + std::abs(z))) continue;
    img.deflection_derivative_mag = deflection_derivative_mag(cfg, z);
    if (std::abs(img.deflection_derivative_mag - 1.0) < kCriticalBand)
      fail(Status::NearCriticalImage,
           "solve_images: |r'(z)| within 1e-6 of 1; classification unreliable");
    img.sense = img.deflection_derivative_mag < 1.0 ? Sense::Preserving
                                                    : Sense::Reversing;
    images.push_back(img);
  }
  std::sort(images.begin(), images.end(),
            [](const LensImage& a, const LensImage& b) {
              return lex_less(a.z, b.z);
            });
  return images;
}

AuditReport audit(const LensConfig& cfg, const std::vector<LensImage>& images) {
  validate(cfg);
  AuditReport rep;
  rep.n = static_cast<int>(cfg.masses.size());
  for (const LensImage& img : images) {
    if (img.sense == Sense::Preserving)
      ++rep.m_plus;
    else
      ++rep.m_minus;
  }

  LensConfig local = cfg;
  local.source = Cx(0.0);
  for (auto& m : local.masses) m.position -= cfg.source;
  const double r_audit = 4.0 * seed_disc_radius(local);

  auto f = [&local](Cx z) {
    Cx r(0.0);
    for (const auto& m : local.masses) r += m.strength / (z - m.position);
    return z - std::conj(r);
  };
  rep.winding = winding_number(f, Cx(0.0), r_audit);
  rep.identity_ok = (rep.m_plus - rep.m_minus + rep.n == rep.winding);
  rep.bound_ok = rep.n >= 2 ? (rep.m_plus + rep.m_minus <= 5 * rep.n - 5) : true;
  return rep;
}

LensConfig polygon_config(int n, double radius, double sigma_each,
                          std::optional<double> center_mass) {
  if (n < 2) fail(Status::InvalidArgument, "polygon_config: n must be >= 2");
  if (!(radius > 0.0))
    fail(Status::InvalidArgument, "polygon_config: radius must be positive");
  if (!(sigma_each > 0.0))
    fail(Status::InvalidArgument, "polygon_config: sigma must be positive");
  if (center_mass && !(*center_mass > 0.0))
    fail(Status::InvalidArgument, "polygon_config: center mass must be positive");

  LensConfig cfg;
  for (int k = 0; k < n; ++k)
    cfg.masses.push_back(
        {std::polar(radius, 2.0 * std::numbers::pi * k / n), sigma_each});
  if (center_mass) {
    cfg.masses.push_back({Cx(0.0), *center_mass});
    const double total = n * sigma_each + *center_mass;
    for (auto& m : cfg.masses) m.strength /= total;  // rescale so sum sigma = 1
  }
  validate(cfg);
  return cfg;
}

std::vector<double> normalize_physical(const std::vector<double>& masses_kg,
                                       double d_l, double d_s, double d_ls,
                                       double grav_const, double c_light) {
  if (!(d_l > 0.0) || !(d_s > 0.0) || !(d_ls > 0.0) || !(grav_const > 0.0) ||
      !(c_light > 0.0))
    fail(Status::NonPositiveInput,
         "normalize_physical: distances and constants must be positive");
  for (double m : masses_kg)
    if (!(m > 0.0))
      fail(Status::NonPositiveInput, "normalize_physical: masses must be positive");
  if (d_ls > d_s)
    fail(Status::InvalidArgument, "normalize_physical: D_LS must not exceed D_S");

  const double geometry = d_ls / (d_s * d_l);
  std::vector<double> sigmas;
  sigmas.reserve(masses_kg.size());
  for (double m : masses_kg)
    sigmas.push_back(geometry * 4.0 * grav_const * m / (c_light * c_light));
  return sigmas;
}

ScanResult mpw_rhie_scan(int n, int radius_steps, int center_steps) {
  if (n < 2) fail(Status::InvalidArgument, "mpw_rhie_scan: n must be >= 2");
  if (radius_steps < 2 || center_steps < 2)
    fail(Status::InvalidArgument, "mpw_rhie_scan: need at least 2 steps");

  ScanResult result;
  for (int ri = 0; ri < radius_steps; ++ri) {
    const double radius = 0.5 + 1.0 * ri / (radius_steps - 1);

    ++result.configs_tried;
    try {
      const LensConfig plain = polygon_config(n, radius, 1.0 / n);
      const int count = static_cast<int>(solve_images(plain).size());
      if (count > result.best_plain.images)
        result.best_plain = {n, radius, 0.0, count};
    } catch (const Error&) {
      ++result.configs_skipped;
    }

    for (int ci = 0; ci < center_steps; ++ci) {
      const double eps =
          std::pow(10.0, -4.0 + 3.0 * ci / (center_steps - 1));  // 1e-4..1e-1
      ++result.configs_tried;
      try {
        const LensConfig rhie = polygon_config(n, radius, 1.0 / n, eps);
        const int count = static_cast<int>(solve_images(rhie).size());
        if (count > result.best_center.images)
          result.best_center = {n + 1, radius, eps, count};
      } catch (const Error&) {
        ++result.configs_skipped;
      }
    }
  }
  return result;
}

}  // namespace cdyn
