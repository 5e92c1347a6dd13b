/* cdyn: quadratic-family complex dynamics, escape-time rendering and
 * point-mass lens solving behind a plain C interface.
 *
 * Every function that can fail returns a cdyn_status; results travel through
 * out-parameters.  Variable-size results (raster images, lens solution sets,
 * harmonic root sets) are owned by opaque handles with _free releases.
 * cdyn_last_error() returns a thread-local detail message for the most
 * recent failure on the calling thread.
 */
#ifndef CDYN_H
#define CDYN_H

#include <stddef.h>

#ifdef _WIN32
#define CDYN_API __declspec(dllexport)
#else
#define CDYN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cdyn_complex {
  double re;
  double im;
} cdyn_complex;

typedef enum cdyn_status {
  CDYN_OK = 0,
  CDYN_ERR_INVALID_ARGUMENT,
  CDYN_ERR_NONCONVERGENCE,
  CDYN_ERR_SINGULAR_JACOBIAN,
  CDYN_ERR_MAX_ITERS,
  CDYN_ERR_DIVERGED,
  CDYN_ERR_COUNT_MISMATCH,
  CDYN_ERR_NOT_ATTRACTING,
  CDYN_ERR_OUT_OF_BASIN,
  CDYN_ERR_BRANCH_AMBIGUITY,
  CDYN_ERR_OUT_OF_DISC,
  CDYN_ERR_NO_ATTRACTOR,
  CDYN_ERR_IO,
  CDYN_ERR_POLE_PROXIMITY,
  CDYN_ERR_DEGENERATE_RING,
  CDYN_ERR_NEAR_CRITICAL_IMAGE,
  CDYN_ERR_ARGUMENT_JUMP,
  CDYN_ERR_EQUAL_DEGREES,
  CDYN_ERR_NON_POSITIVE_INPUT,
  CDYN_ERR_PARSE,
  CDYN_ERR_INVALID_CONFIG,
  CDYN_ERR_INTERNAL
} cdyn_status;

#define CDYN_STABILITY_SUPERATTRACTING 0
#define CDYN_STABILITY_ATTRACTING 1
#define CDYN_STABILITY_INDIFFERENT 2
#define CDYN_STABILITY_REPELLING 3

#define CDYN_SENSE_REVERSING 0
#define CDYN_SENSE_PRESERVING 1

CDYN_API const char* cdyn_status_name(cdyn_status s);
CDYN_API const char* cdyn_last_error(void);

/* One line per built-in default, "name=value". */
CDYN_API const char* cdyn_defaults(void);

/* ------------------------------------------------------------------ */
/* numerics                                                            */
/* ------------------------------------------------------------------ */

/* product = z*w and power = z^n via polar form; 0^0 is 1. */
CDYN_API cdyn_status cdyn_polar_mul_pow(cdyn_complex z, cdyn_complex w, long n,
                                        cdyn_complex* product,
                                        cdyn_complex* power);

/* coeffs: a0..ad, constant term first, count = d+1.  Value and derivative
 * come from a single Horner pass. */
CDYN_API cdyn_status cdyn_poly_eval(const cdyn_complex* coeffs, int count,
                                    cdyn_complex z, cdyn_complex* value,
                                    cdyn_complex* derivative);

/* Simultaneous root finding.  roots/residuals must hold count-1 entries;
 * degree_out receives the number written (the trimmed degree, multiplicities
 * repeated). */
CDYN_API cdyn_status cdyn_poly_roots(const cdyn_complex* coeffs, int count,
                                     cdyn_complex* roots, double* residuals,
                                     int* degree_out);

/* ------------------------------------------------------------------ */
/* dynamics of z |-> z^2 + c                                           */
/* ------------------------------------------------------------------ */

typedef struct cdyn_cycle {
  cdyn_complex points[8]; /* iteration order; entries < period are valid */
  int period;
  cdyn_complex multiplier;
  int stability; /* CDYN_STABILITY_* */
} cdyn_cycle;

CDYN_API double cdyn_escape_radius(cdyn_complex c);

/* points must hold n+1 entries; count receives the number filled (the orbit
 * stops at the first point beyond the escape radius). */
CDYN_API cdyn_status cdyn_orbit(cdyn_complex c, cdyn_complex z0, int n,
                                cdyn_complex* points, int* count, int* escaped,
                                int* escape_index);

CDYN_API cdyn_status cdyn_fixed_points(cdyn_complex c, cdyn_cycle* star,
                                       cdyn_cycle* bullet);

/* exists = 0 and an untouched cycle when c = -3/4. */
CDYN_API cdyn_status cdyn_period2_points(cdyn_complex c, cdyn_cycle* cycle,
                                         int* exists);

/* All cycles of period <= max_period (max 8).  Pass cycles = NULL to query
 * the count. */
CDYN_API cdyn_status cdyn_cycles_up_to(cdyn_complex c, int max_period,
                                       cdyn_cycle* cycles, int capacity,
                                       int* count);

CDYN_API int cdyn_classify(cdyn_complex multiplier);

CDYN_API cdyn_status cdyn_koenig(cdyn_complex c, cdyn_complex fixed,
                                 cdyn_complex z, int n, cdyn_complex* phi,
                                 double* residual);

/* General polynomial map (coeffs a0..ad) at a superattracting fixed point of
 * local degree 2.  disc_radius <= 0 selects the adaptive contraction disc. */
CDYN_API cdyn_status cdyn_boettcher(const cdyn_complex* coeffs, int count,
                                    cdyn_complex fixed, cdyn_complex z, int n,
                                    double disc_radius, cdyn_complex* phi,
                                    double* residual);

CDYN_API cdyn_status cdyn_green(cdyn_complex c, cdyn_complex z, int max_iter,
                                double* value, int* iterations, int* converged);

/* ------------------------------------------------------------------ */
/* parameter plane                                                     */
/* ------------------------------------------------------------------ */

CDYN_API cdyn_status cdyn_mandelbrot_member(cdyn_complex c, int max_iter,
                                            int* bounded, int* escape_index,
                                            double* potential);
CDYN_API int cdyn_cardioid_contains(cdyn_complex c);
CDYN_API int cdyn_period2_disk_contains(cdyn_complex c);

/* period receives 0 when no near-return of the critical orbit shows up. */
CDYN_API cdyn_status cdyn_hyperbolic_period(cdyn_complex c, int max_period,
                                            int max_iter, int* period);

/* ------------------------------------------------------------------ */
/* rendering                                                           */
/* ------------------------------------------------------------------ */

typedef struct cdyn_image cdyn_image;

/* threads <= 0 picks the hardware count; the bytes are identical for any
 * thread count. */
CDYN_API cdyn_status cdyn_render_mandelbrot(int width, int height,
                                            cdyn_complex center, double scale,
                                            int max_iter, int threads,
                                            cdyn_image** out);
CDYN_API cdyn_status cdyn_render_julia(cdyn_complex c, int width, int height,
                                       cdyn_complex center, double scale,
                                       int max_iter, int threads,
                                       cdyn_image** out);
CDYN_API cdyn_status cdyn_render_basins(cdyn_complex c, int width, int height,
                                        cdyn_complex center, double scale,
                                        int max_iter, int threads,
                                        cdyn_image** out);

CDYN_API int cdyn_image_width(const cdyn_image* img);
CDYN_API int cdyn_image_height(const cdyn_image* img);
/* RGB, 3 bytes per pixel, row-major, top row first. */
CDYN_API const unsigned char* cdyn_image_pixels(const cdyn_image* img);
/* Binary PPM (P6); path "-" writes to stdout. */
CDYN_API cdyn_status cdyn_image_write_ppm(const cdyn_image* img,
                                          const char* path, size_t* bytes);
CDYN_API void cdyn_image_free(cdyn_image* img);

CDYN_API void cdyn_palette(double v, unsigned char rgb[3]);

/* ------------------------------------------------------------------ */
/* gravitational lensing                                               */
/* ------------------------------------------------------------------ */

typedef struct cdyn_lens cdyn_lens;
typedef struct cdyn_solution cdyn_solution;

typedef struct cdyn_lens_image {
  cdyn_complex z;
  int sense; /* CDYN_SENSE_* */
  double abs_rprime;
  double residual;
} cdyn_lens_image;

typedef struct cdyn_audit_report {
  int n;
  int m_plus;
  int m_minus;
  int winding;
  int identity_ok; /* (m+ - m-) + n == winding */
  int bound_ok;    /* m+ + m- <= 5n - 5 for n >= 2 */
} cdyn_audit_report;

CDYN_API cdyn_status cdyn_lens_create(const cdyn_complex* positions,
                                      const double* strengths, int n,
                                      cdyn_complex source, cdyn_lens** out);
/* Scene JSON file: {"masses":[{"re","im","sigma"},...], "source":{"re","im"}} */
CDYN_API cdyn_status cdyn_lens_load(const char* path, cdyn_lens** out);
/* center_mass <= 0 means no central perturbation. */
CDYN_API cdyn_status cdyn_lens_polygon(int n, double radius, double sigma_each,
                                       double center_mass, cdyn_lens** out);
CDYN_API void cdyn_lens_free(cdyn_lens* lens);
CDYN_API int cdyn_lens_mass_count(const cdyn_lens* lens);

CDYN_API cdyn_status cdyn_lens_residual(const cdyn_lens* lens, cdyn_complex z,
                                        cdyn_complex* value, cdyn_complex* dz,
                                        cdyn_complex* dzbar);

CDYN_API cdyn_status cdyn_lens_einstein_ring(const cdyn_lens* lens,
                                             double* radius, int* is_ring);

/* grid <= 0 selects the default 48x48 seed grid. */
CDYN_API cdyn_status cdyn_lens_solve(const cdyn_lens* lens, int grid,
                                     cdyn_solution** out);
CDYN_API int cdyn_solution_count(const cdyn_solution* sol);
CDYN_API cdyn_status cdyn_solution_image(const cdyn_solution* sol, int i,
                                         cdyn_lens_image* out);
/* CSV "re,im,sense,abs_rprime,residual", 17 significant digits, rows sorted
 * by (re, im); path "-" writes to stdout. */
CDYN_API cdyn_status cdyn_solution_write_csv(const cdyn_solution* sol,
                                             const char* path, size_t* bytes);
CDYN_API void cdyn_solution_free(cdyn_solution* sol);

CDYN_API cdyn_status cdyn_lens_audit(const cdyn_lens* lens,
                                     const cdyn_lens_image* images, int count,
                                     cdyn_audit_report* out);

/* sigma_j = (D_LS / (D_S D_L)) * 4 G M_j / c^2 */
CDYN_API cdyn_status cdyn_normalize_physical(const double* masses_kg, int count,
                                             double d_l, double d_s,
                                             double d_ls, double grav_const,
                                             double c_light, double* sigmas);

/* ------------------------------------------------------------------ */
/* harmonic polynomial equations p(z) = conj(q(z))                     */
/* ------------------------------------------------------------------ */

typedef struct cdyn_wilmshurst cdyn_wilmshurst;

typedef struct cdyn_wilmshurst_root {
  cdyn_complex z;
  int sense;
  double derivative_ratio;
  double residual;
  int index;
} cdyn_wilmshurst_root;

/* deg p must exceed deg q; equal degrees are rejected. */
CDYN_API cdyn_status cdyn_wilmshurst_solve(const cdyn_complex* p_coeffs,
                                           int p_count,
                                           const cdyn_complex* q_coeffs,
                                           int q_count, cdyn_wilmshurst** out);
CDYN_API int cdyn_wilmshurst_count(const cdyn_wilmshurst* w);
CDYN_API cdyn_status cdyn_wilmshurst_get_root(const cdyn_wilmshurst* w, int i,
                                              cdyn_wilmshurst_root* out);
/* conjugate_form_bound is 3n-2 when q(z) = z, else -1; lll_bound is
 * 2m(n-1) + n (reported, not asserted). */
CDYN_API void cdyn_wilmshurst_bounds(const cdyn_wilmshurst* w,
                                     int* conjugate_form_bound, int* lll_bound);
CDYN_API cdyn_status cdyn_wilmshurst_write_csv(const cdyn_wilmshurst* w,
                                               const char* path, size_t* bytes);
CDYN_API void cdyn_wilmshurst_free(cdyn_wilmshurst* w);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CDYN_H */
