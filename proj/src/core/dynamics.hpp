#pragma once

#include <array>
#include <optional>
#include <vector>

#include "poly.hpp"

namespace cdyn {

// Shared numeric defaults.
inline constexpr double kEscapeRadiusBig = 1e8;   // far-field cutoff for potentials
inline constexpr double kIndifferentBand = 1e-6;  // width of ||lambda|-1| band
inline constexpr double kSuperattractingEps = 1e-9;
inline constexpr int kDefaultMaxIter = 1000;
inline constexpr int kCycleGrid = 64;             // multistart grid for periodic points
inline constexpr int kMaxCyclePeriod = 8;

// The quadratic family z |-> z^2 + c.
struct QuadMap {
  Cx c{};
  Cx operator()(Cx z) const { return z * z + c; }
  Cx derivative(Cx z) const { return 2.0 * z; }
  Poly to_poly() const { return Poly(std::vector<Cx>{c, Cx(0.0), Cx(1.0)}); }
};

struct Orbit {
  Cx z0{};
  std::vector<Cx> points;  // z_0 .. z_k; stops at the first escaping point
  bool escaped = false;
  int escape_index = -1;   // index of the first point beyond the escape radius
};

enum class Stability { Superattracting = 0, Attracting, Indifferent, Repelling };

const char* stability_name(Stability s);

struct Cycle {
  std::vector<Cx> points;  // iteration order, starting at the (re,im)-smallest point
  int period = 1;
  Cx multiplier{};
  Stability stability = Stability::Repelling;
};

struct FixedPointPair {
  Cycle star;    // 1/2 + sqrt(1-4c)/2, multiplier 1 + sqrt(1-4c)
  Cycle bullet;  // 1/2 - sqrt(1-4c)/2, multiplier 1 - sqrt(1-4c)
};

struct GreenValue {
  double value = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

struct ConjugacyValue {
  Cx phi{};
  double residual = 0.0;
};

// R(c) = max(2, |c|): beyond it |p_c(z)| >= |z|(|z|-1) > |z|.
double escape_radius(const QuadMap& map);

Orbit iterate(const QuadMap& map, Cx z0, int n);

// Generic polynomial orbit; bailout <= 0 disables escape detection.
Orbit iterate(const Poly& p, Cx z0, int n, double bailout = 0.0);

Stability classify(Cx multiplier);

FixedPointPair fixed_points(const QuadMap& map);

// The 2-cycle -1/2 +- sqrt(-3-4c)/2 with multiplier 4 + 4c, or nothing when
// c = -3/4 (the two points coincide).
std::optional<Cycle> period2_points(const QuadMap& map);

// All cycles of period <= max_period (capped at 8), found by functional
// multistart Newton on p^m(z) - z.  Every period-m pass is audited: local
// winding numbers around the deduplicated solutions must total 2^m, and for
// m <= 4 an independent coefficient-expansion root finding pass must agree.
// Throws CountMismatch when either audit fails.
std::vector<Cycle> cycles_up_to(const QuadMap& map, int max_period);

// First attracting or superattracting cycle of period <= max_period, searched
// period by period; a quadratic map carries at most one.
std::optional<Cycle> attracting_cycle(const QuadMap& map,
                                      int max_period = kMaxCyclePeriod);

// Linearizing coordinate at an attracting fixed point with multiplier
// 0 < |lambda| < 1: phi_n(z), computed after shifting the fixed point to the
// origin, together with the conjugacy residual |phi_n(p(z)) - lambda phi_n(z)|.
ConjugacyValue koenig(const Poly& p, Cx fixed, Cx z, int n);
ConjugacyValue koenig(const QuadMap& map, Cx fixed, Cx z, int n);

// Conjugating coordinate at a superattracting fixed point of local degree 2:
// phi_n(z) = (p^n(z) - fixed)^(1/2^n) with each square-root branch chosen
// nearest the matching orbit value; residual |phi_n(p(z)) - phi_n(z)^2|.
// disc_radius overrides the adaptive contraction disc.
ConjugacyValue boettcher(const Poly& p, Cx fixed, Cx z, int n,
                         std::optional<double> disc_radius = {});
ConjugacyValue boettcher(const QuadMap& map, Cx fixed, Cx z, int n,
                         std::optional<double> disc_radius = {});

// Escape-rate potential: once |z_n| > 1e8 return 2^-n log|z_n|; a full budget
// without escape reports 0 with converged=false.
GreenValue green(const QuadMap& map, Cx z, int max_iter = kDefaultMaxIter);

// Largest radius <= 0.1 around the fixed point at which 20 sample orbits
// contract monotonically; 0 when none is found down to 1e-6.
double contraction_radius(const Poly& p, Cx fixed);

}  // namespace cdyn
