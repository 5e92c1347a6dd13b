// Command-line front end for the cdyn shared library.  Every subcommand
// prints reproducible text/CSV/PPM output: same argv, same bytes.

#include <cdyn/cdyn.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

struct CommandFailure {
  std::string message;
};

[[noreturn]] void die(const std::string& msg) { throw CommandFailure{msg}; }

void check(cdyn_status s, const char* op) {
  if (s != CDYN_OK)
    die(std::string(op) + ": " + cdyn_status_name(s) + ": " + cdyn_last_error());
}

cdyn_complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("complex values use \"re,im\"");
  char* end = nullptr;
  cdyn_complex z;
  const std::string re = text.substr(0, comma);
  const std::string im = text.substr(comma + 1);
  z.re = std::strtod(re.c_str(), &end);
  if (end != re.c_str() + re.size())
    throw CLI::ValidationError("bad real part: " + re);
  z.im = std::strtod(im.c_str(), &end);
  if (end != im.c_str() + im.size())
    throw CLI::ValidationError("bad imaginary part: " + im);
  return z;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* stability_text(int s) {
  switch (s) {
    case CDYN_STABILITY_SUPERATTRACTING: return "superattracting";
    case CDYN_STABILITY_ATTRACTING: return "attracting";
    case CDYN_STABILITY_INDIFFERENT: return "indifferent";
    case CDYN_STABILITY_REPELLING: return "repelling";
  }
  return "unknown";
}

struct OrbitArgs {
  std::string c, z0;
  int n = 100;
};

struct RenderArgs {
  std::string mode;
  std::string c = "0,0";
  std::string center = "0,0";
  int width = 0, height = 0;
  double scale = 0.0;
  int max_iter = 1000;
  int threads = 0;
  std::string out;
};

int run_orbit(const OrbitArgs& a) {
  std::vector<cdyn_complex> points(static_cast<std::size_t>(a.n) + 1);
  int count = 0, escaped = 0, escape_index = -1;
  check(cdyn_orbit(parse_complex(a.c), parse_complex(a.z0), a.n, points.data(),
                   &count, &escaped, &escape_index),
        "orbit");
  std::string text;
  for (int i = 0; i < count; ++i)
    text += fmt(points[i].re) + "," + fmt(points[i].im) + "\n";
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_member(const std::string& c_text, int max_iter) {
  int bounded = 0, escape_index = -1;
  double potential = 0.0;
  check(cdyn_mandelbrot_member(parse_complex(c_text), max_iter, &bounded,
                               &escape_index, &potential),
        "member");
  if (bounded)
    std::puts("bounded");
  else
    std::printf("escaped,%d\n", escape_index);
  return 0;
}

int run_green(const std::string& c_text, const std::string& z_text,
              int max_iter) {
  double value = 0.0;
  int iters = 0, converged = 0;
  check(cdyn_green(parse_complex(c_text), parse_complex(z_text), max_iter,
                   &value, &iters, &converged),
        "green");
  std::printf("%s,%d,%s\n", fmt(value).c_str(), iters,
              converged ? "escaped" : "bounded");
  return 0;
}

int run_cycles(const std::string& c_text, int max_period) {
  int count = 0;
  check(cdyn_cycles_up_to(parse_complex(c_text), max_period, nullptr, 0, &count),
        "cycles");
  std::vector<cdyn_cycle> cycles(count);
  check(cdyn_cycles_up_to(parse_complex(c_text), max_period, cycles.data(),
                          count, &count),
        "cycles");
  std::string text = "period,index,re,im,mult_re,mult_im,stability\n";
  for (const cdyn_cycle& cyc : cycles)
    for (int i = 0; i < cyc.period; ++i)
      text += std::to_string(cyc.period) + "," + std::to_string(i) + "," +
              fmt(cyc.points[i].re) + "," + fmt(cyc.points[i].im) + "," +
              fmt(cyc.multiplier.re) + "," + fmt(cyc.multiplier.im) + "," +
              stability_text(cyc.stability) + "\n";
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_koenig(const std::string& c_text, const std::string& z_text,
               const std::string& fixed_text, int n) {
  const cdyn_complex c = parse_complex(c_text);
  cdyn_complex fixed;
  if (fixed_text.empty()) {
    cdyn_cycle star, bullet;
    check(cdyn_fixed_points(c, &star, &bullet), "koenig");
    if (bullet.stability == CDYN_STABILITY_ATTRACTING) {
      fixed = bullet.points[0];
    } else if (star.stability == CDYN_STABILITY_ATTRACTING) {
      fixed = star.points[0];
    } else {
      die("koenig: no attracting fixed point; pass --fixed explicitly");
    }
  } else {
    fixed = parse_complex(fixed_text);
  }
  cdyn_complex phi;
  double residual = 0.0;
  check(cdyn_koenig(c, fixed, parse_complex(z_text), n, &phi, &residual),
        "koenig");
  std::printf("%s,%s,%s\n", fmt(phi.re).c_str(), fmt(phi.im).c_str(),
              fmt(residual).c_str());
  return 0;
}

int run_render(const RenderArgs& a) {
  cdyn_image* img = nullptr;
  const cdyn_complex center = parse_complex(a.center);
  if (a.mode == "mandelbrot") {
    check(cdyn_render_mandelbrot(a.width, a.height, center, a.scale,
                                 a.max_iter, a.threads, &img),
          "render");
  } else if (a.mode == "julia") {
    check(cdyn_render_julia(parse_complex(a.c), a.width, a.height, center,
                            a.scale, a.max_iter, a.threads, &img),
          "render");
  } else if (a.mode == "basins") {
    check(cdyn_render_basins(parse_complex(a.c), a.width, a.height, center,
                             a.scale, a.max_iter, a.threads, &img),
          "render");
  } else {
    die("render: unknown mode " + a.mode);
  }
  size_t bytes = 0;
  const cdyn_status s = cdyn_image_write_ppm(img, a.out.c_str(), &bytes);
  cdyn_image_free(img);
  check(s, "render");
  return 0;
}

int run_lens_solve(const std::string& scene, int grid, const std::string& out) {
  cdyn_lens* lens = nullptr;
  check(cdyn_lens_load(scene.c_str(), &lens), "lens-solve");
  cdyn_solution* sol = nullptr;
  cdyn_status s = cdyn_lens_solve(lens, grid, &sol);
  if (s != CDYN_OK) {
    cdyn_lens_free(lens);
    check(s, "lens-solve");
  }
  size_t bytes = 0;
  s = cdyn_solution_write_csv(sol, out.c_str(), &bytes);
  cdyn_solution_free(sol);
  cdyn_lens_free(lens);
  check(s, "lens-solve");
  return 0;
}

int run_lens_audit(const std::string& scene, int grid) {
  cdyn_lens* lens = nullptr;
  check(cdyn_lens_load(scene.c_str(), &lens), "lens-audit");
  cdyn_solution* sol = nullptr;
  cdyn_status s = cdyn_lens_solve(lens, grid, &sol);
  if (s != CDYN_OK) {
    cdyn_lens_free(lens);
    check(s, "lens-audit");
  }
  const int count = cdyn_solution_count(sol);
  std::vector<cdyn_lens_image> images(count);
  for (int i = 0; i < count; ++i) cdyn_solution_image(sol, i, &images[i]);
  cdyn_audit_report rep;
  s = cdyn_lens_audit(lens, images.data(), count, &rep);
  cdyn_solution_free(sol);
  cdyn_lens_free(lens);
  check(s, "lens-audit");
  std::printf("n,m_plus,m_minus,winding,identity_ok,bound_ok\n");
  std::printf("%d,%d,%d,%d,%s,%s\n", rep.n, rep.m_plus, rep.m_minus,
              rep.winding, rep.identity_ok ? "true" : "false",
              rep.bound_ok ? "true" : "false");
  return 0;
}

int run_lens_normalize(const std::vector<double>& masses, double dl, double ds,
                       double dls, double grav, double c_light) {
  std::vector<double> sigmas(masses.size());
  check(cdyn_normalize_physical(masses.data(), static_cast<int>(masses.size()),
                                dl, ds, dls, grav, c_light, sigmas.data()),
        "lens-normalize");
  std::string text;
  for (double s : sigmas) text += fmt(s) + "\n";
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_wilmshurst(const std::vector<std::string>& p_texts,
                   const std::vector<std::string>& q_texts,
                   const std::string& out) {
  std::vector<cdyn_complex> p, q;
  for (const auto& t : p_texts) p.push_back(parse_complex(t));
  for (const auto& t : q_texts) q.push_back(parse_complex(t));
  if (q.empty()) {  // default equation z = conj(p(z))
    q.push_back({0.0, 0.0});
    q.push_back({1.0, 0.0});
  }
  cdyn_wilmshurst* w = nullptr;
  check(cdyn_wilmshurst_solve(p.data(), static_cast<int>(p.size()), q.data(),
                              static_cast<int>(q.size()), &w),
        "wilmshurst");
  size_t bytes = 0;
  const cdyn_status s = cdyn_wilmshurst_write_csv(w, out.c_str(), &bytes);
  int ks_bound = -1, lll_bound = 0;
  cdyn_wilmshurst_bounds(w, &ks_bound, &lll_bound);
  const int count = cdyn_wilmshurst_count(w);
  cdyn_wilmshurst_free(w);
  check(s, "wilmshurst");
  std::fprintf(stderr, "count=%d conjugate_form_bound=%d lll_bound=%d\n", count,
               ks_bound, lll_bound);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdyn: quadratic-map dynamics, escape-time rendering and "
               "point-mass lens solving"};
  app.require_subcommand(0, 1);

  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults,
               "print built-in numeric defaults and exit");

  std::function<int()> action;

  // orbit
  auto orbit_args = std::make_shared<OrbitArgs>();
  auto* orbit = app.add_subcommand("orbit", "iterate z^2 + c, print CSV rows re,im");
  orbit->add_option("--c", orbit_args->c, "parameter re,im")->required();
  orbit->add_option("--z0", orbit_args->z0, "initial condition re,im")->required();
  orbit->add_option("--n", orbit_args->n, "iteration count");
  orbit->callback([&action, orbit_args] {
    action = [orbit_args] { return run_orbit(*orbit_args); };
  });

  // member
  auto member_c = std::make_shared<std::string>();
  auto member_iter = std::make_shared<int>(1000);
  auto* member = app.add_subcommand("member", "critical-orbit membership test");
  member->add_option("--c", *member_c, "parameter re,im")->required();
  member->add_option("--max-iter", *member_iter, "iteration budget");
  member->callback([&action, member_c, member_iter] {
    action = [member_c, member_iter] { return run_member(*member_c, *member_iter); };
  });

  // green
  auto green_c = std::make_shared<std::string>();
  auto green_z = std::make_shared<std::string>();
  auto green_iter = std::make_shared<int>(1000);
  auto* greens = app.add_subcommand("green", "escape-rate potential value,iterations,verdict");
  greens->add_option("--c", *green_c, "parameter re,im")->required();
  greens->add_option("--z", *green_z, "point re,im")->required();
  greens->add_option("--max-iter", *green_iter, "iteration budget");
  greens->callback([&action, green_c, green_z, green_iter] {
    action = [green_c, green_z, green_iter] {
      return run_green(*green_c, *green_z, *green_iter);
    };
  });

  // cycles
  auto cycles_c = std::make_shared<std::string>();
  auto cycles_p = std::make_shared<int>(3);
  auto* cycles = app.add_subcommand("cycles", "periodic orbits up to a period");
  cycles->add_option("--c", *cycles_c, "parameter re,im")->required();
  cycles->add_option("--max-period", *cycles_p, "largest period (1..8)");
  cycles->callback([&action, cycles_c, cycles_p] {
    action = [cycles_c, cycles_p] { return run_cycles(*cycles_c, *cycles_p); };
  });

  // koenig
  auto koenig_c = std::make_shared<std::string>();
  auto koenig_z = std::make_shared<std::string>();
  auto koenig_fixed = std::make_shared<std::string>();
  auto koenig_n = std::make_shared<int>(60);
  auto* koenig = app.add_subcommand("koenig", "linearizing coordinate phi_re,phi_im,residual");
  koenig->add_option("--c", *koenig_c, "parameter re,im")->required();
  koenig->add_option("--z", *koenig_z, "point re,im")->required();
  koenig->add_option("--fixed", *koenig_fixed,
                     "fixed point re,im (default: the attracting one)");
  koenig->add_option("--n", *koenig_n, "approximation depth");
  koenig->callback([&action, koenig_c, koenig_z, koenig_fixed, koenig_n] {
    action = [koenig_c, koenig_z, koenig_fixed, koenig_n] {
      return run_koenig(*koenig_c, *koenig_z, *koenig_fixed, *koenig_n);
    };
  });

  // render
  auto render_args = std::make_shared<RenderArgs>();
  auto* render = app.add_subcommand("render", "write a PPM image");
  render->add_option("--mode", render_args->mode, "mandelbrot | julia | basins")
      ->required();
  render->add_option("--c", render_args->c, "parameter re,im (julia/basins)");
  render->add_option("--width", render_args->width, "pixels")->required();
  render->add_option("--height", render_args->height, "pixels")->required();
  render->add_option("--center", render_args->center, "view center re,im");
  render->add_option("--scale", render_args->scale, "complex units per pixel")
      ->required();
  render->add_option("--max-iter", render_args->max_iter, "iteration budget");
  render->add_option("--threads", render_args->threads,
                     "worker cap, 0 = hardware")
      ->envname("CDYN_THREADS");
  render->add_option("--out", render_args->out, "output path, - for stdout")
      ->required();
  render->callback([&action, render_args] {
    action = [render_args] { return run_render(*render_args); };
  });

  // lens-solve
  auto ls_scene = std::make_shared<std::string>();
  auto ls_grid = std::make_shared<int>(0);
  auto ls_out = std::make_shared<std::string>("-");
  auto* lens_solve = app.add_subcommand("lens-solve", "solve a lens scene, write CSV");
  lens_solve->add_option("--scene", *ls_scene, "scene JSON path")->required();
  lens_solve->add_option("--grid", *ls_grid, "seed grid size (default 48)");
  lens_solve->add_option("--out", *ls_out, "output path, - for stdout");
  lens_solve->callback([&action, ls_scene, ls_grid, ls_out] {
    action = [ls_scene, ls_grid, ls_out] {
      return run_lens_solve(*ls_scene, *ls_grid, *ls_out);
    };
  });

  // lens-audit
  auto la_scene = std::make_shared<std::string>();
  auto la_grid = std::make_shared<int>(0);
  auto* lens_audit = app.add_subcommand("lens-audit", "argument-principle audit of a scene");
  lens_audit->add_option("--scene", *la_scene, "scene JSON path")->required();
  lens_audit->add_option("--grid", *la_grid, "seed grid size (default 48)");
  lens_audit->callback([&action, la_scene, la_grid] {
    action = [la_scene, la_grid] { return run_lens_audit(*la_scene, *la_grid); };
  });

  // lens-normalize
  auto ln_masses = std::make_shared<std::vector<double>>();
  auto ln_dl = std::make_shared<double>(0.0);
  auto ln_ds = std::make_shared<double>(0.0);
  auto ln_dls = std::make_shared<double>(0.0);
  auto ln_g = std::make_shared<double>(6.67430e-11);
  auto ln_c = std::make_shared<double>(299792458.0);
  auto* lens_norm = app.add_subcommand("lens-normalize",
                                       "physical masses to dimensionless strengths");
  lens_norm->add_option("--mass", *ln_masses, "mass in kg (repeatable)")->required();
  lens_norm->add_option("--dl", *ln_dl, "observer-lens distance, m")->required();
  lens_norm->add_option("--ds", *ln_ds, "observer-source distance, m")->required();
  lens_norm->add_option("--dls", *ln_dls, "lens-source distance, m")->required();
  lens_norm->add_option("--grav", *ln_g, "gravitational constant");
  lens_norm->add_option("--c-light", *ln_c, "speed of light");
  lens_norm->callback([&action, ln_masses, ln_dl, ln_ds, ln_dls, ln_g, ln_c] {
    action = [ln_masses, ln_dl, ln_ds, ln_dls, ln_g, ln_c] {
      return run_lens_normalize(*ln_masses, *ln_dl, *ln_ds, *ln_dls, *ln_g, *ln_c);
    };
  });

  // wilmshurst
  auto wp = std::make_shared<std::vector<std::string>>();
  auto wq = std::make_shared<std::vector<std::string>>();
  auto wout = std::make_shared<std::string>("-");
  auto* wilm = app.add_subcommand("wilmshurst", "solve p(z) = conj(q(z)), write CSV");
  wilm->add_option("--p", *wp, "p coefficient re,im, constant first (repeatable)")
      ->required();
  wilm->add_option("--q", *wq, "q coefficient re,im (repeatable; default q(z) = z)");
  wilm->add_option("--out", *wout, "output path, - for stdout");
  wilm->callback([&action, wp, wq, wout] {
    action = [wp, wq, wout] { return run_wilmshurst(*wp, *wq, *wout); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (show_defaults) {
    std::fputs(cdyn_defaults(), stdout);
    return 0;
  }
  if (!action) {
    std::fputs(app.help().c_str(), stderr);
    return 2;
  }
  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const CommandFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return 1;
  }
}
