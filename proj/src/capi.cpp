#include <cdyn/cdyn.h>

#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/lens.hpp"
#include "core/lens_io.hpp"
#include "core/parameter.hpp"
#include "core/raster.hpp"
#include "core/roots.hpp"
#include "core/winding.hpp"
#include "core/wilmshurst.hpp"

namespace {

thread_local std::string g_last_error;

cdyn_status map_status(cdyn::Status s) {
  using S = cdyn::Status;
  switch (s) {
    case S::Ok: return CDYN_OK;
    case S::InvalidArgument: return CDYN_ERR_INVALID_ARGUMENT;
    case S::NonConvergence: return CDYN_ERR_NONCONVERGENCE;
    case S::SingularJacobian: return CDYN_ERR_SINGULAR_JACOBIAN;
    case S::MaxIters: return CDYN_ERR_MAX_ITERS;
    case S::Diverged: return CDYN_ERR_DIVERGED;
    case S::CountMismatch: return CDYN_ERR_COUNT_MISMATCH;
    case S::NotAttracting: return CDYN_ERR_NOT_ATTRACTING;
    case S::OutOfBasin: return CDYN_ERR_OUT_OF_BASIN;
    case S::BranchAmbiguity: return CDYN_ERR_BRANCH_AMBIGUITY;
    case S::OutOfDisc: return CDYN_ERR_OUT_OF_DISC;
    case S::NoAttractor: return CDYN_ERR_NO_ATTRACTOR;
    case S::IoError: return CDYN_ERR_IO;
    case S::PoleProximity: return CDYN_ERR_POLE_PROXIMITY;
    case S::DegenerateRing: return CDYN_ERR_DEGENERATE_RING;
    case S::NearCriticalImage: return CDYN_ERR_NEAR_CRITICAL_IMAGE;
    case S::ArgumentJump: return CDYN_ERR_ARGUMENT_JUMP;
    case S::EqualDegrees: return CDYN_ERR_EQUAL_DEGREES;
    case S::NonPositiveInput: return CDYN_ERR_NON_POSITIVE_INPUT;
    case S::ParseError: return CDYN_ERR_PARSE;
    case S::InvalidConfig: return CDYN_ERR_INVALID_CONFIG;
    case S::Internal: return CDYN_ERR_INTERNAL;
  }
  return CDYN_ERR_INTERNAL;
}

template <typename Fn>
cdyn_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return CDYN_OK;
  } catch (const cdyn::Error& e) {
    g_last_error = e.what();
    return map_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CDYN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CDYN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CDYN_ERR_INTERNAL;
  }
}

cdyn_status invalid(const char* what) {
  g_last_error = what;
  return CDYN_ERR_INVALID_ARGUMENT;
}

inline cdyn::Cx from_c(cdyn_complex z) { return {z.re, z.im}; }
inline cdyn_complex to_c(cdyn::Cx z) { return {z.real(), z.imag()}; }

void fill_cycle(const cdyn::Cycle& in, cdyn_cycle* out) {
  std::memset(out, 0, sizeof(*out));
  out->period = in.period;
  for (int i = 0; i < in.period && i < 8; ++i) out->points[i] = to_c(in.points[i]);
  out->multiplier = to_c(in.multiplier);
  out->stability = static_cast<int>(in.stability);
}

std::vector<cdyn::Cx> coeff_vector(const cdyn_complex* coeffs, int count) {
  std::vector<cdyn::Cx> c;
  c.reserve(count);
  for (int i = 0; i < count; ++i) c.push_back(from_c(coeffs[i]));
  return c;
}

cdyn_status write_text_output(const std::string& path_or_dash,
                              const std::function<std::size_t(std::ostream&)>& writer,
                              size_t* bytes) {
  return guarded([&] {
    std::size_t n = 0;
    if (path_or_dash.empty() || path_or_dash == "-") {
      n = writer(std::cout);
      std::cout.flush();
    } else {
      std::ofstream out(path_or_dash, std::ios::binary);
      if (!out) cdyn::fail(cdyn::Status::IoError, "cannot open " + path_or_dash);
      n = writer(out);
    }
    if (bytes) *bytes = n;
  });
}

}  // namespace

struct cdyn_lens {
  cdyn::LensConfig cfg;
};

struct cdyn_image {
  cdyn::RasterBuffer buf;
};

struct cdyn_solution {
  std::vector<cdyn::LensImage> images;
};

struct cdyn_wilmshurst {
  cdyn::WilmshurstResult result;
};

extern "C" {

const char* cdyn_status_name(cdyn_status s) {
  return cdyn::status_name(static_cast<cdyn::Status>(s));
}

const char* cdyn_last_error(void) { return g_last_error.c_str(); }

const char* cdyn_defaults(void) {
  static const std::string text = [] {
    std::ostringstream os;
    os << "max_iter=" << cdyn::kDefaultMaxIter << "\n"
       << "escape_radius_big=" << cdyn::kEscapeRadiusBig << "\n"
       << "indifferent_band=" << cdyn::kIndifferentBand << "\n"
       << "superattracting_eps=" << cdyn::kSuperattractingEps << "\n"
       << "cycle_grid=" << cdyn::kCycleGrid << "\n"
       << "max_cycle_period=" << cdyn::kMaxCyclePeriod << "\n"
       << "root_tol=" << cdyn::RootOptions{}.tol << "\n"
       << "root_max_sweeps=" << cdyn::RootOptions{}.max_sweeps << "\n"
       << "newton_max_iters=" << cdyn::NewtonOptions{}.max_iters << "\n"
       << "newton_divergence_radius=" << cdyn::NewtonOptions{}.divergence_radius << "\n"
       << "lens_grid=" << cdyn::SolveOptions{}.grid << "\n"
       << "lens_pole_ring_seeds=" << cdyn::SolveOptions{}.pole_ring_seeds << "\n"
       << "audit_samples=" << cdyn::WindingOptions{}.initial_samples << "\n"
       << "tile_size=64\n"
       << "threads=0 (auto)\n";
    return os.str();
  }();
  return text.c_str();
}

/* ---------------- numerics ---------------- */

cdyn_status cdyn_polar_mul_pow(cdyn_complex z, cdyn_complex w, long n,
                               cdyn_complex* product, cdyn_complex* power) {
  if (!product || !power) return invalid("null output pointer");
  return guarded([&] {
    auto [prod, pw] = cdyn::polar_mul_pow(from_c(z), from_c(w), n);
    *product = to_c(prod);
    *power = to_c(pw);
  });
}

cdyn_status cdyn_poly_eval(const cdyn_complex* coeffs, int count,
                           cdyn_complex z, cdyn_complex* value,
                           cdyn_complex* derivative) {
  if (!coeffs || count < 1) return invalid("poly_eval: empty coefficients");
  if (!value || !derivative) return invalid("null output pointer");
  return guarded([&] {
    cdyn::Poly p(coeff_vector(coeffs, count));
    auto [v, d] = p.eval_with_derivative(from_c(z));
    *value = to_c(v);
    *derivative = to_c(d);
  });
}

cdyn_status cdyn_poly_roots(const cdyn_complex* coeffs, int count,
                            cdyn_complex* roots, double* residuals,
                            int* degree_out) {
  if (!coeffs || count < 2) return invalid("poly_roots: need degree >= 1");
  if (!roots || !residuals || !degree_out) return invalid("null output pointer");
  return guarded([&] {
    const cdyn::RootSet rs = cdyn::poly_roots(cdyn::Poly(coeff_vector(coeffs, count)));
    *degree_out = static_cast<int>(rs.roots.size());
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      roots[i] = to_c(rs.roots[i]);
      residuals[i] = rs.residuals[i];
    }
  });
}

/* ---------------- dynamics ---------------- */

double cdyn_escape_radius(cdyn_complex c) {
  return cdyn::escape_radius(cdyn::QuadMap{from_c(c)});
}

cdyn_status cdyn_orbit(cdyn_complex c, cdyn_complex z0, int n,
                       cdyn_complex* points, int* count, int* escaped,
                       int* escape_index) {
  if (!points || !count || !escaped || !escape_index)
    return invalid("null output pointer");
  return guarded([&] {
    const cdyn::Orbit o = cdyn::iterate(cdyn::QuadMap{from_c(c)}, from_c(z0), n);
    *count = static_cast<int>(o.points.size());
    for (std::size_t i = 0; i < o.points.size(); ++i) points[i] = to_c(o.points[i]);
    *escaped = o.escaped ? 1 : 0;
    *escape_index = o.escape_index;
  });
}

cdyn_status cdyn_fixed_points(cdyn_complex c, cdyn_cycle* star,
                              cdyn_cycle* bullet) {
  if (!star || !bullet) return invalid("null output pointer");
  return guarded([&] {
    const cdyn::FixedPointPair pair = cdyn::fixed_points(cdyn::QuadMap{from_c(c)});
    fill_cycle(pair.star, star);
    fill_cycle(pair.bullet, bullet);
  });
}

cdyn_status cdyn_period2_points(cdyn_complex c, cdyn_cycle* cycle, int* exists) {
  if (!cycle || !exists) return invalid("null output pointer");
  return guarded([&] {
    const auto opt = cdyn::period2_points(cdyn::QuadMap{from_c(c)});
    *exists = opt.has_value() ? 1 : 0;
    if (opt) fill_cycle(*opt, cycle);
  });
}

cdyn_status cdyn_cycles_up_to(cdyn_complex c, int max_period, cdyn_cycle* cycles,
                              int capacity, int* count) {
  if (!count) return invalid("null output pointer");
  return guarded([&] {
    const auto found = cdyn::cycles_up_to(cdyn::QuadMap{from_c(c)}, max_period);
    *count = static_cast<int>(found.size());
    if (!cycles) return;
    if (capacity < static_cast<int>(found.size()))
      cdyn::fail(cdyn::Status::InvalidArgument,
                 "cycles_up_to: capacity " + std::to_string(capacity) +
                     " below cycle count " + std::to_string(found.size()));
    for (std::size_t i = 0; i < found.size(); ++i) fill_cycle(found[i], &cycles[i]);
  });
}

int cdyn_classify(cdyn_complex multiplier) {
  return static_cast<int>(cdyn::classify(from_c(multiplier)));
}

cdyn_status cdyn_koenig(cdyn_complex c, cdyn_complex fixed, cdyn_complex z,
                        int n, cdyn_complex* phi, double* residual) {
  if (!phi || !residual) return invalid("null output pointer");
  return guarded([&] {
    const auto v = cdyn::koenig(cdyn::QuadMap{from_c(c)}, from_c(fixed), from_c(z), n);
    *phi = to_c(v.phi);
    *residual = v.residual;
  });
}

cdyn_status cdyn_boettcher(const cdyn_complex* coeffs, int count,
                           cdyn_complex fixed, cdyn_complex z, int n,
                           double disc_radius, cdyn_complex* phi,
                           double* residual) {
  if (!coeffs || count < 3) return invalid("boettcher: need degree >= 2");
  if (!phi || !residual) return invalid("null output pointer");
  return guarded([&] {
    std::optional<double> radius;
    if (disc_radius > 0.0) radius = disc_radius;
    const auto v = cdyn::boettcher(cdyn::Poly(coeff_vector(coeffs, count)),
                                   from_c(fixed), from_c(z), n, radius);
    *phi = to_c(v.phi);
    *residual = v.residual;
  });
}

cdyn_status cdyn_green(cdyn_complex c, cdyn_complex z, int max_iter,
                       double* value, int* iterations, int* converged) {
  if (!value || !iterations || !converged) return invalid("null output pointer");
  return guarded([&] {
    const cdyn::GreenValue g = cdyn::green(cdyn::QuadMap{from_c(c)}, from_c(z), max_iter);
    *value = g.value;
    *iterations = g.iterations_used;
    *converged = g.converged ? 1 : 0;
  });
}

/* ---------------- parameter ---------------- */

cdyn_status cdyn_mandelbrot_member(cdyn_complex c, int max_iter, int* bounded,
                                   int* escape_index, double* potential) {
  if (!bounded || !escape_index || !potential)
    return invalid("null output pointer");
  return guarded([&] {
    const cdyn::MemberResult r = cdyn::mandelbrot_member(from_c(c), max_iter);
    *bounded = r.bounded ? 1 : 0;
    *escape_index = r.escape_index;
    *potential = r.potential;
  });
}

int cdyn_cardioid_contains(cdyn_complex c) {
  return cdyn::cardioid_contains(from_c(c)) ? 1 : 0;
}

int cdyn_period2_disk_contains(cdyn_complex c) {
  return cdyn::period2_disk_contains(from_c(c)) ? 1 : 0;
}

cdyn_status cdyn_hyperbolic_period(cdyn_complex c, int max_period, int max_iter,
                                   int* period) {
  if (!period) return invalid("null output pointer");
  return guarded([&] {
    const auto p = cdyn::hyperbolic_period(from_c(c), max_period, max_iter);
    *period = p.value_or(0);
  });
}

/* ---------------- rendering ---------------- */

static cdyn_status render_common(cdyn::ImageSpec spec, int threads,
                                 cdyn_image** out) {
  if (!out) return invalid("null output pointer");
  *out = nullptr;
  return guarded([&] {
    auto img = std::make_unique<cdyn_image>();
    img->buf = cdyn::render(spec, threads);
    *out = img.release();
  });
}

cdyn_status cdyn_render_mandelbrot(int width, int height, cdyn_complex center,
                                   double scale, int max_iter, int threads,
                                   cdyn_image** out) {
  cdyn::ImageSpec spec;
  spec.width = width;
  spec.height = height;
  spec.center = from_c(center);
  spec.scale = scale;
  spec.max_iter = max_iter;
  spec.mode = cdyn::RenderMode::Mandelbrot;
  return render_common(spec, threads, out);
}

cdyn_status cdyn_render_julia(cdyn_complex c, int width, int height,
                              cdyn_complex center, double scale, int max_iter,
                              int threads, cdyn_image** out) {
  cdyn::ImageSpec spec;
  spec.width = width;
  spec.height = height;
  spec.center = from_c(center);
  spec.scale = scale;
  spec.max_iter = max_iter;
  spec.mode = cdyn::RenderMode::Julia;
  spec.c = from_c(c);
  return render_common(spec, threads, out);
}

cdyn_status cdyn_render_basins(cdyn_complex c, int width, int height,
                               cdyn_complex center, double scale, int max_iter,
                               int threads, cdyn_image** out) {
  cdyn::ImageSpec spec;
  spec.width = width;
  spec.height = height;
  spec.center = from_c(center);
  spec.scale = scale;
  spec.max_iter = max_iter;
  spec.mode = cdyn::RenderMode::Basins;
  spec.c = from_c(c);
  return render_common(spec, threads, out);
}

int cdyn_image_width(const cdyn_image* img) { return img ? img->buf.width : 0; }
int cdyn_image_height(const cdyn_image* img) { return img ? img->buf.height : 0; }

const unsigned char* cdyn_image_pixels(const cdyn_image* img) {
  return img ? img->buf.pixels.data() : nullptr;
}

cdyn_status cdyn_image_write_ppm(const cdyn_image* img, const char* path,
                                 size_t* bytes) {
  if (!img || !path) return invalid("null image or path");
  return write_text_output(path, [&](std::ostream& out) {
    return cdyn::write_ppm(img->buf, out);
  }, bytes);
}

void cdyn_image_free(cdyn_image* img) { delete img; }

void cdyn_palette(double v, unsigned char rgb[3]) {
  const auto c = cdyn::palette(v);
  rgb[0] = c[0];
  rgb[1] = c[1];
  rgb[2] = c[2];
}

/* ---------------- lensing ---------------- */

cdyn_status cdyn_lens_create(const cdyn_complex* positions,
                             const double* strengths, int n,
                             cdyn_complex source, cdyn_lens** out) {
  if (!positions || !strengths || !out) return invalid("null pointer");
  *out = nullptr;
  return guarded([&] {
    auto lens = std::make_unique<cdyn_lens>();
    for (int i = 0; i < n; ++i)
      lens->cfg.masses.push_back({from_c(positions[i]), strengths[i]});
    lens->cfg.source = from_c(source);
    cdyn::validate(lens->cfg);
    *out = lens.release();
  });
}

cdyn_status cdyn_lens_load(const char* path, cdyn_lens** out) {
  if (!path || !out) return invalid("null pointer");
  *out = nullptr;
  return guarded([&] {
    auto lens = std::make_unique<cdyn_lens>();
    lens->cfg = cdyn::load_lens_config(path);
    *out = lens.release();
  });
}

cdyn_status cdyn_lens_polygon(int n, double radius, double sigma_each,
                              double center_mass, cdyn_lens** out) {
  if (!out) return invalid("null pointer");
  *out = nullptr;
  return guarded([&] {
    std::optional<double> center;
    if (center_mass > 0.0) center = center_mass;
    auto lens = std::make_unique<cdyn_lens>();
    lens->cfg = cdyn::polygon_config(n, radius, sigma_each, center);
    *out = lens.release();
  });
}

void cdyn_lens_free(cdyn_lens* lens) { delete lens; }

int cdyn_lens_mass_count(const cdyn_lens* lens) {
  return lens ? static_cast<int>(lens->cfg.masses.size()) : 0;
}

cdyn_status cdyn_lens_residual(const cdyn_lens* lens, cdyn_complex z,
                               cdyn_complex* value, cdyn_complex* dz,
                               cdyn_complex* dzbar) {
  if (!lens || !value || !dz || !dzbar) return invalid("null pointer");
  return guarded([&] {
    const cdyn::WirtingerEval e = cdyn::lens_residual(lens->cfg, from_c(z));
    *value = to_c(e.value);
    *dz = to_c(e.dz);
    *dzbar = to_c(e.dzbar);
  });
}

cdyn_status cdyn_lens_einstein_ring(const cdyn_lens* lens, double* radius,
                                    int* is_ring) {
  if (!lens || !radius || !is_ring) return invalid("null pointer");
  return guarded([&] {
    const auto r = cdyn::einstein_ring_check(lens->cfg);
    *is_ring = r.has_value() ? 1 : 0;
    *radius = r.value_or(0.0);
  });
}

cdyn_status cdyn_lens_solve(const cdyn_lens* lens, int grid,
                            cdyn_solution** out) {
  if (!lens || !out) return invalid("null pointer");
  *out = nullptr;
  return guarded([&] {
    cdyn::SolveOptions opts;
    if (grid > 0) opts.grid = grid;
    auto sol = std::make_unique<cdyn_solution>();
    sol->images = cdyn::solve_images(lens->cfg, opts);
    *out = sol.release();
  });
}

int cdyn_solution_count(const cdyn_solution* sol) {
  return sol ? static_cast<int>(sol->images.size()) : 0;
}

cdyn_status cdyn_solution_image(const cdyn_solution* sol, int i,
                                cdyn_lens_image* out) {
  if (!sol || !out) return invalid("null pointer");
  if (i < 0 || i >= static_cast<int>(sol->images.size()))
    return invalid("solution index out of range");
  const cdyn::LensImage& img = sol->images[i];
  out->z = to_c(img.z);
  out->sense = static_cast<int>(img.sense);
  out->abs_rprime = img.deflection_derivative_mag;
  out->residual = img.residual;
  return CDYN_OK;
}

cdyn_status cdyn_solution_write_csv(const cdyn_solution* sol, const char* path,
                                    size_t* bytes) {
  if (!sol || !path) return invalid("null pointer");
  return write_text_output(path, [&](std::ostream& out) {
    return cdyn::write_solution_csv(out, sol->images);
  }, bytes);
}

void cdyn_solution_free(cdyn_solution* sol) { delete sol; }

cdyn_status cdyn_lens_audit(const cdyn_lens* lens, const cdyn_lens_image* images,
                            int count, cdyn_audit_report* out) {
  if (!lens || !out || (count > 0 && !images)) return invalid("null pointer");
  return guarded([&] {
    std::vector<cdyn::LensImage> imgs;
    imgs.reserve(count);
    for (int i = 0; i < count; ++i) {
      cdyn::LensImage img;
      img.z = from_c(images[i].z);
      img.sense = images[i].sense == CDYN_SENSE_PRESERVING
                      ? cdyn::Sense::Preserving
                      : cdyn::Sense::Reversing;
      img.deflection_derivative_mag = images[i].abs_rprime;
      img.residual = images[i].residual;
      imgs.push_back(img);
    }
    const cdyn::AuditReport rep = cdyn::audit(lens->cfg, imgs);
    out->n = rep.n;
    out->m_plus = rep.m_plus;
    out->m_minus = rep.m_minus;
    out->winding = rep.winding;
    out->identity_ok = rep.identity_ok ? 1 : 0;
    out->bound_ok = rep.bound_ok ? 1 : 0;
  });
}

cdyn_status cdyn_normalize_physical(const double* masses_kg, int count,
                                    double d_l, double d_s, double d_ls,
                                    double grav_const, double c_light,
                                    double* sigmas) {
  if (!masses_kg || !sigmas || count < 1) return invalid("null pointer or empty");
  return guarded([&] {
    const auto s = cdyn::normalize_physical(
        std::vector<double>(masses_kg, masses_kg + count), d_l, d_s, d_ls,
        grav_const, c_light);
    for (int i = 0; i < count; ++i) sigmas[i] = s[i];
  });
}

/* ---------------- harmonic polynomial equations ---------------- */

cdyn_status cdyn_wilmshurst_solve(const cdyn_complex* p_coeffs, int p_count,
                                  const cdyn_complex* q_coeffs, int q_count,
                                  cdyn_wilmshurst** out) {
  if (!p_coeffs || p_count < 2 || !out) return invalid("null pointer or degree < 1");
  if (q_count > 0 && !q_coeffs) return invalid("null q coefficients");
  *out = nullptr;
  return guarded([&] {
    const cdyn::Poly p(coeff_vector(p_coeffs, p_count));
    const cdyn::Poly q(q_count > 0 ? coeff_vector(q_coeffs, q_count)
                                   : std::vector<cdyn::Cx>{cdyn::Cx(0.0)});
    auto w = std::make_unique<cdyn_wilmshurst>();
    w->result = cdyn::wilmshurst_solve(p, q);
    *out = w.release();
  });
}

int cdyn_wilmshurst_count(const cdyn_wilmshurst* w) {
  return w ? w->result.counts.total : 0;
}

cdyn_status cdyn_wilmshurst_get_root(const cdyn_wilmshurst* w, int i,
                                     cdyn_wilmshurst_root* out) {
  if (!w || !out) return invalid("null pointer");
  if (i < 0 || i >= static_cast<int>(w->result.roots.size()))
    return invalid("root index out of range");
  const cdyn::WilmshurstRoot& r = w->result.roots[i];
  out->z = to_c(r.z);
  out->sense = static_cast<int>(r.sense);
  out->derivative_ratio = r.derivative_ratio;
  out->residual = r.residual;
  out->index = r.index;
  return CDYN_OK;
}

void cdyn_wilmshurst_bounds(const cdyn_wilmshurst* w, int* conjugate_form_bound,
                            int* lll_bound) {
  if (!w) return;
  if (conjugate_form_bound) *conjugate_form_bound = w->result.counts.conjugate_form_bound;
  if (lll_bound) *lll_bound = w->result.counts.lll_bound;
}

cdyn_status cdyn_wilmshurst_write_csv(const cdyn_wilmshurst* w, const char* path,
                                      size_t* bytes) {
  if (!w || !path) return invalid("null pointer");
  return write_text_output(path, [&](std::ostream& out) {
    return cdyn::write_wilmshurst_csv(out, w->result.roots);
  }, bytes);
}

void cdyn_wilmshurst_free(cdyn_wilmshurst* w) { delete w; }

} /* extern "C" */
