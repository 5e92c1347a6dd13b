#pragma once

#include <optional>
#include <vector>

#include "complex_ops.hpp"
#include "newton2d.hpp"

namespace cdyn {

inline constexpr double kGravitationalConstant = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double kSpeedOfLight = 299792458.0;           // m / s

struct PointMass {
  Cx position{};
  double strength = 0.0;  // sigma_j > 0, angular units squared
};

// Point-mass deflector set plus the source position w; image positions z
// solve z = w + conj(sum sigma_j / (z - z_j)).
struct LensConfig {
  std::vector<PointMass> masses;
  Cx source{};
};

enum class Sense { Reversing = 0, Preserving = 1 };

struct LensImage {
  Cx z{};
  Sense sense = Sense::Preserving;
  double deflection_derivative_mag = 0.0;  // |r'(z)|
  double residual = 0.0;                   // |z - w - conj(r(z))|
};

struct AuditReport {
  int n = 0;
  int m_plus = 0;
  int m_minus = 0;
  int winding = 0;
  bool identity_ok = false;  // (m+ - m-) + n == winding
  bool bound_ok = false;     // m+ + m- <= 5n - 5 for n >= 2
};

struct SolveOptions {
  int grid = 48;             // G x G seeds over the bounding disc
  int pole_ring_seeds = 16;  // seeds per ring, 4 rings per pole
};

// Throws InvalidConfig unless all strengths are positive, positions are
// pairwise separated by more than 1e-9 and at least one mass is present.
void validate(const LensConfig& cfg);

// F(z) = z - w - conj(r(z)) with the Wirtinger pair (1, -conj(r'(z))).
// Throws PoleProximity within 1e-10 of a mass position.
WirtingerEval lens_residual(const LensConfig& cfg, Cx z);

// Multistart Newton over a seed disc plus rings around every pole; converged
// roots are sorted by (re, im), deduplicated at 1e-8 and classified by
// |r'(z)| against 1.  Configurations whose image set is a full circle raise
// DegenerateRing; an image with ||r'(z)| - 1| < 1e-6 raises NearCriticalImage.
std::vector<LensImage> solve_images(const LensConfig& cfg,
                                    const SolveOptions& opts = {});

// Argument-principle audit on a circle enclosing all poles and images.
AuditReport audit(const LensConfig& cfg, const std::vector<LensImage>& images);

// sqrt(sigma) when a single mass sits exactly on the source, else nothing.
std::optional<double> einstein_ring_check(const LensConfig& cfg);

// n equal masses on a regular polygon; a central mass, when given, is added
// at the origin and all strengths are rescaled so they sum to 1.
LensConfig polygon_config(int n, double radius, double sigma_each,
                          std::optional<double> center_mass = {});

// sigma_j = (D_LS / (D_S D_L)) * 4 G M_j / c^2.
std::vector<double> normalize_physical(const std::vector<double>& masses_kg,
                                       double d_l, double d_s, double d_ls,
                                       double grav_const = kGravitationalConstant,
                                       double c_light = kSpeedOfLight);

// Parameter scan over polygon configurations: radius in [0.5, 1.5], optional
// central mass in [1e-4, 1e-1] log-spaced.  Records the best image counts
// seen; configurations the solver rejects are skipped and counted.
struct ScanEntry {
  int mass_count = 0;
  double radius = 0.0;
  double center_mass = 0.0;  // 0 = plain polygon
  int images = 0;
};

struct ScanResult {
  ScanEntry best_plain;
  ScanEntry best_center;
  int configs_tried = 0;
  int configs_skipped = 0;
};

ScanResult mpw_rhie_scan(int n, int radius_steps = 11, int center_steps = 7);

}  // namespace cdyn
