#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cdyn/cdyn.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

namespace {

std::string temp_path(const char* name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("c api: status names and defaults text") {
  CHECK(std::strcmp(cdyn_status_name(CDYN_OK), "ok") == 0);
  CHECK(std::strcmp(cdyn_status_name(CDYN_ERR_POLE_PROXIMITY), "pole_proximity") == 0);
  CHECK(std::strcmp(cdyn_status_name(CDYN_ERR_EQUAL_DEGREES), "equal_degrees") == 0);
  const std::string defaults = cdyn_defaults();
  CHECK(defaults.find("max_iter=1000") != std::string::npos);
  CHECK(defaults.find("lens_grid=48") != std::string::npos);
}

TEST_CASE("c api: numerics surface") {
  cdyn_complex prod, power;
  REQUIRE(cdyn_polar_mul_pow({0.0, 1.0}, {0.0, 1.0}, 2, &prod, &power) == CDYN_OK);
  CHECK(std::abs(prod.re + 1.0) < 1e-15);
  CHECK(std::abs(power.re + 1.0) < 1e-15);
  CHECK(cdyn_polar_mul_pow({1.0, 0.0}, {1.0, 0.0}, -1, &prod, &power) ==
        CDYN_ERR_INVALID_ARGUMENT);

  const cdyn_complex quad[3] = {{-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};  // z^2 - 1
  cdyn_complex value, deriv;
  REQUIRE(cdyn_poly_eval(quad, 3, {-1.0, 0.0}, &value, &deriv) == CDYN_OK);
  CHECK(value.re == 0.0);
  CHECK(deriv.re == -2.0);

  cdyn_complex roots[2];
  double residuals[2];
  int degree = 0;
  REQUIRE(cdyn_poly_roots(quad, 3, roots, residuals, &degree) == CDYN_OK);
  CHECK(degree == 2);
  CHECK(std::abs(roots[0].re + 1.0) < 1e-12);
  CHECK(std::abs(roots[1].re - 1.0) < 1e-12);
}

TEST_CASE("c api: orbit, fixed points, cycles") {
  CHECK(cdyn_escape_radius({0.0, 5.0}) == 5.0);

  cdyn_complex points[5];
  int count = 0, escaped = 0, escape_index = -1;
  REQUIRE(cdyn_orbit({-1.0, 0.0}, {0.0, 0.0}, 4, points, &count, &escaped,
                     &escape_index) == CDYN_OK);
  CHECK(count == 5);
  CHECK(points[1].re == -1.0);
  CHECK(!escaped);

  cdyn_cycle star, bullet;
  REQUIRE(cdyn_fixed_points({0.0, 0.25}, &star, &bullet) == CDYN_OK);
  CHECK(std::abs(bullet.points[0].re + 0.049342) < 1e-6);
  CHECK(bullet.stability == CDYN_STABILITY_ATTRACTING);
  CHECK(star.stability == CDYN_STABILITY_REPELLING);

  cdyn_cycle two;
  int exists = 0;
  REQUIRE(cdyn_period2_points({-1.0, 0.0}, &two, &exists) == CDYN_OK);
  CHECK(exists == 1);
  CHECK(two.stability == CDYN_STABILITY_SUPERATTRACTING);
  REQUIRE(cdyn_period2_points({-0.75, 0.0}, &two, &exists) == CDYN_OK);
  CHECK(exists == 0);

  int ncycles = 0;
  REQUIRE(cdyn_cycles_up_to({-1.0, 0.0}, 2, nullptr, 0, &ncycles) == CDYN_OK);
  CHECK(ncycles == 3);
  cdyn_cycle cycles[3];
  REQUIRE(cdyn_cycles_up_to({-1.0, 0.0}, 2, cycles, 3, &ncycles) == CDYN_OK);
  CHECK(cycles[2].period == 2);
  CHECK(cdyn_cycles_up_to({-1.0, 0.0}, 2, cycles, 1, &ncycles) ==
        CDYN_ERR_INVALID_ARGUMENT);

  CHECK(cdyn_classify({0.0, 0.0}) == CDYN_STABILITY_SUPERATTRACTING);
  CHECK(cdyn_classify({4.0, 0.0}) == CDYN_STABILITY_REPELLING);
}

TEST_CASE("c api: koenig, boettcher, green, membership") {
  cdyn_cycle star, bullet;
  REQUIRE(cdyn_fixed_points({0.0, 0.25}, &star, &bullet) == CDYN_OK);
  cdyn_complex phi;
  double residual = 0.0;
  REQUIRE(cdyn_koenig({0.0, 0.25}, bullet.points[0],
                      {bullet.points[0].re + 1e-6, bullet.points[0].im}, 40,
                      &phi, &residual) == CDYN_OK);
  CHECK(std::abs(phi.re - 1e-6) < 1e-10);
  CHECK(residual < 1e-12);
  CHECK(cdyn_koenig({0.0, 0.25}, star.points[0], star.points[0], 10, &phi,
                    &residual) == CDYN_ERR_NOT_ATTRACTING);
  CHECK(std::string(cdyn_last_error()).find("multiplier") != std::string::npos);

  const cdyn_complex sq[3] = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};  // z^2
  REQUIRE(cdyn_boettcher(sq, 3, {0.0, 0.0}, {0.05, 0.02}, 8, 0.0, &phi,
                         &residual) == CDYN_OK);
  CHECK(std::abs(phi.re - 0.05) < 1e-12);
  CHECK(std::abs(phi.im - 0.02) < 1e-12);

  double value = 0.0;
  int iters = 0, converged = 0;
  REQUIRE(cdyn_green({0.0, 0.0}, {2.0, 0.0}, 1000, &value, &iters, &converged) ==
          CDYN_OK);
  CHECK(converged == 1);
  CHECK(std::abs(value - std::log(2.0)) < 1e-9);

  int bounded = 0, escape_index = -1;
  double potential = 0.0;
  REQUIRE(cdyn_mandelbrot_member({0.5, 0.0}, 1000, &bounded, &escape_index,
                                 &potential) == CDYN_OK);
  CHECK(bounded == 0);
  CHECK(escape_index == 5);
  CHECK(potential > 0.0);
  CHECK(cdyn_cardioid_contains({0.0, 0.0}) == 1);
  CHECK(cdyn_period2_disk_contains({-1.0, 0.0}) == 1);
  int period = -1;
  REQUIRE(cdyn_hyperbolic_period({-1.0, 0.0}, 16, 1000, &period) == CDYN_OK);
  CHECK(period == 2);
}

TEST_CASE("c api: rendering handles and PPM output") {
  cdyn_image* img = nullptr;
  REQUIRE(cdyn_render_julia({0.0, 0.0}, 16, 9, {0.0, 0.0}, 0.3, 100, 2, &img) ==
          CDYN_OK);
  REQUIRE(img != nullptr);
  CHECK(cdyn_image_width(img) == 16);
  CHECK(cdyn_image_height(img) == 9);
  CHECK(cdyn_image_pixels(img) != nullptr);

  const std::string path = temp_path("capi_test.ppm");
  size_t bytes = 0;
  REQUIRE(cdyn_image_write_ppm(img, path.c_str(), &bytes) == CDYN_OK);
  CHECK(bytes == std::strlen("P6\n16 9\n255\n") + 3 * 16 * 9);
  std::ifstream in(path, std::ios::binary);
  std::string header(9, '\0');
  in.read(header.data(), 9);
  CHECK(header == "P6\n16 9\n2");
  cdyn_image_free(img);
  std::remove(path.c_str());

  unsigned char rgb[3];
  cdyn_palette(0.0, rgb);
  CHECK(rgb[0] == 255);
  CHECK(rgb[1] == 63);

  img = nullptr;
  CHECK(cdyn_render_basins({1.0, 0.0}, 8, 8, {0.0, 0.0}, 0.2, 50, 1, &img) ==
        CDYN_ERR_NO_ATTRACTOR);
  CHECK(img == nullptr);
}

TEST_CASE("c api: lens lifecycle") {
  const cdyn_complex pos[1] = {{1.0, 0.0}};
  const double sigma[1] = {1.0};
  cdyn_lens* lens = nullptr;
  REQUIRE(cdyn_lens_create(pos, sigma, 1, {0.0, 0.0}, &lens) == CDYN_OK);
  CHECK(cdyn_lens_mass_count(lens) == 1);

  cdyn_complex value, dz, dzbar;
  REQUIRE(cdyn_lens_residual(lens, {2.0, 0.0}, &value, &dz, &dzbar) == CDYN_OK);
  CHECK(std::abs(value.re - 1.0) < 1e-15);  // 2 - 1/(2-1) = 1

  double ring = 0.0;
  int is_ring = 0;
  REQUIRE(cdyn_lens_einstein_ring(lens, &ring, &is_ring) == CDYN_OK);
  CHECK(is_ring == 0);

  cdyn_solution* sol = nullptr;
  REQUIRE(cdyn_lens_solve(lens, 0, &sol) == CDYN_OK);
  REQUIRE(cdyn_solution_count(sol) == 2);
  cdyn_lens_image images[2];
  REQUIRE(cdyn_solution_image(sol, 0, &images[0]) == CDYN_OK);
  REQUIRE(cdyn_solution_image(sol, 1, &images[1]) == CDYN_OK);
  CHECK(std::abs(images[0].z.re - (1.0 - std::sqrt(5.0)) / 2.0) < 1e-10);
  CHECK(images[0].sense == CDYN_SENSE_PRESERVING);
  CHECK(images[1].sense == CDYN_SENSE_REVERSING);

  cdyn_audit_report rep;
  REQUIRE(cdyn_lens_audit(lens, images, 2, &rep) == CDYN_OK);
  CHECK(rep.identity_ok == 1);
  CHECK(rep.winding == 1);

  const std::string csv_path = temp_path("capi_solution.csv");
  size_t bytes = 0;
  REQUIRE(cdyn_solution_write_csv(sol, csv_path.c_str(), &bytes) == CDYN_OK);
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "re,im,sense,abs_rprime,residual");
  std::remove(csv_path.c_str());

  cdyn_solution_free(sol);
  cdyn_lens_free(lens);
}

TEST_CASE("c api: lens JSON loading and error codes") {
  const std::string path = temp_path("capi_scene.json");
  {
    std::ofstream out(path);
    out << R"({"masses":[{"re":0.5,"im":0,"sigma":0.5},{"re":-0.5,"im":0,"sigma":0.5}]})";
  }
  cdyn_lens* lens = nullptr;
  REQUIRE(cdyn_lens_load(path.c_str(), &lens) == CDYN_OK);
  CHECK(cdyn_lens_mass_count(lens) == 2);
  cdyn_lens_free(lens);
  std::remove(path.c_str());

  lens = nullptr;
  CHECK(cdyn_lens_load("/nonexistent/scene.json", &lens) == CDYN_ERR_IO);
  {
    std::ofstream out(path);
    out << "{broken";
  }
  CHECK(cdyn_lens_load(path.c_str(), &lens) == CDYN_ERR_PARSE);
  std::remove(path.c_str());

  // degenerate ring via the polygon helper path
  const cdyn_complex origin[1] = {{0.0, 0.0}};
  const double s1[1] = {1.0};
  REQUIRE(cdyn_lens_create(origin, s1, 1, {0.0, 0.0}, &lens) == CDYN_OK);
  double ring = 0.0;
  int is_ring = 0;
  REQUIRE(cdyn_lens_einstein_ring(lens, &ring, &is_ring) == CDYN_OK);
  CHECK(is_ring == 1);
  CHECK(ring == 1.0);
  cdyn_solution* sol = nullptr;
  CHECK(cdyn_lens_solve(lens, 0, &sol) == CDYN_ERR_DEGENERATE_RING);
  cdyn_lens_free(lens);
}

TEST_CASE("c api: polygon and physical normalization") {
  cdyn_lens* lens = nullptr;
  REQUIRE(cdyn_lens_polygon(3, 1.0, 1.0 / 3.0, 0.01, &lens) == CDYN_OK);
  CHECK(cdyn_lens_mass_count(lens) == 4);
  cdyn_lens_free(lens);

  const double masses[2] = {1.0e30, 2.0e30};
  double sigmas[2] = {0.0, 0.0};
  REQUIRE(cdyn_normalize_physical(masses, 2, 1e22, 2e22, 1e22, 6.6743e-11,
                                  299792458.0, sigmas) == CDYN_OK);
  CHECK(sigmas[1] == 2.0 * sigmas[0]);
  CHECK(cdyn_normalize_physical(masses, 2, -1.0, 2e22, 1e22, 6.6743e-11,
                                299792458.0, sigmas) ==
        CDYN_ERR_NON_POSITIVE_INPUT);
}

TEST_CASE("c api: harmonic equation handle") {
  const cdyn_complex p[3] = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};  // z^2
  const cdyn_complex q[2] = {{0.0, 0.0}, {1.0, 0.0}};              // z
  cdyn_wilmshurst* w = nullptr;
  REQUIRE(cdyn_wilmshurst_solve(p, 3, q, 2, &w) == CDYN_OK);
  CHECK(cdyn_wilmshurst_count(w) == 4);
  int ks = 0, lll = 0;
  cdyn_wilmshurst_bounds(w, &ks, &lll);
  CHECK(ks == 4);
  cdyn_wilmshurst_root root;
  REQUIRE(cdyn_wilmshurst_get_root(w, 0, &root) == CDYN_OK);
  CHECK(cdyn_wilmshurst_get_root(w, 99, &root) == CDYN_ERR_INVALID_ARGUMENT);
  cdyn_wilmshurst_free(w);

  w = nullptr;
  CHECK(cdyn_wilmshurst_solve(p, 3, p, 3, &w) == CDYN_ERR_EQUAL_DEGREES);
}
