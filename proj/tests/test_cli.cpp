// End-to-end checks of the cdyn command-line tool.  The binary path arrives
// as argv[1]; commands run through popen and their stdout/exit codes are
// asserted against the documented surface.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;
std::string g_cli;

#define CHECK_MSG(cond, msg)                                              \
  do {                                                                    \
    if (!(cond)) {                                                        \
      ++g_failures;                                                       \
      std::cerr << "FAIL " << __LINE__ << ": " << msg << "\n";            \
    }                                                                     \
  } while (0)

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  RunResult r;
  const std::string cmd =
      g_cli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const char* name, const std::string& content) {
  const std::string path = std::string("/tmp/") + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

void test_orbit() {
  const RunResult r = run("orbit --c -1,0 --z0 0,0 --n 4");
  CHECK_MSG(r.exit_code == 0, "orbit exit");
  CHECK_MSG(r.out == "0,0\n-1,0\n0,0\n-1,0\n0,0\n", "orbit rows, got: " + r.out);
}

void test_member() {
  const RunResult escaped = run("member --c 0.5,0");
  CHECK_MSG(escaped.exit_code == 0, "member exit");
  CHECK_MSG(escaped.out.rfind("escaped,", 0) == 0, "member escaped prefix");
  const RunResult bounded = run("member --c -1,0");
  CHECK_MSG(bounded.out == "bounded\n", "member bounded");
}

void test_green() {
  const RunResult r = run("green --c 0,0 --z 2,0");
  CHECK_MSG(r.exit_code == 0, "green exit");
  CHECK_MSG(r.out.rfind("0.6931471805599", 0) == 0, "green log2 value: " + r.out);
}

void test_cycles() {
  const RunResult r = run("cycles --c -1,0 --max-period 2");
  CHECK_MSG(r.exit_code == 0, "cycles exit");
  CHECK_MSG(r.out.rfind("period,index,re,im,mult_re,mult_im,stability\n", 0) == 0,
            "cycles header");
  CHECK_MSG(r.out.find("superattracting") != std::string::npos,
            "cycles superattracting row");
}

void test_koenig() {
  const RunResult r = run("koenig --c 0,0.25 --z -0.045,0.230 --n 60");
  CHECK_MSG(r.exit_code == 0, "koenig exit");
  // phi_re,phi_im,residual with a tiny residual in the last column
  const auto last_comma = r.out.rfind(',');
  const double resid = std::strtod(r.out.c_str() + last_comma + 1, nullptr);
  CHECK_MSG(resid < 1e-10, "koenig residual small");
}

void test_render_determinism() {
  const std::string p1 = "/tmp/cli_render_1.ppm";
  const std::string p4 = "/tmp/cli_render_4.ppm";
  const RunResult r1 = run("render --mode mandelbrot --width 160 --height 120 "
                           "--center -0.7,0 --scale 0.02 --threads 1 --out " + p1);
  const RunResult r4 = run("render --mode mandelbrot --width 160 --height 120 "
                           "--center -0.7,0 --scale 0.02 --threads 4 --out " + p4);
  CHECK_MSG(r1.exit_code == 0 && r4.exit_code == 0, "render exits");
  std::ifstream f1(p1, std::ios::binary), f4(p4, std::ios::binary);
  const std::string b1((std::istreambuf_iterator<char>(f1)), {});
  const std::string b4((std::istreambuf_iterator<char>(f4)), {});
  CHECK_MSG(!b1.empty() && b1 == b4, "render bytes identical across threads");
  CHECK_MSG(b1.rfind("P6\n160 120\n255\n", 0) == 0, "ppm header");
  std::remove(p1.c_str());
  std::remove(p4.c_str());
}

void test_lens_pipeline() {
  const std::string scene = temp_file(
      "cli_scene.json", R"({"masses":[{"re":1,"im":0,"sigma":1}]})");
  const RunResult solve = run("lens-solve --scene " + scene);
  CHECK_MSG(solve.exit_code == 0, "lens-solve exit");
  CHECK_MSG(solve.out.rfind("re,im,sense,abs_rprime,residual\n", 0) == 0,
            "lens csv header");
  CHECK_MSG(solve.out.find("1.6180339887498") != std::string::npos,
            "lens image value");

  // identical bytes on a second run
  const RunResult again = run("lens-solve --scene " + scene);
  CHECK_MSG(solve.out == again.out, "lens-solve reproducible");

  const RunResult auditr = run("lens-audit --scene " + scene);
  CHECK_MSG(auditr.exit_code == 0, "lens-audit exit");
  CHECK_MSG(auditr.out.find("\n1,1,1,1,true,true\n") != std::string::npos,
            "audit row, got: " + auditr.out);

  const RunResult missing = run("lens-solve --scene /nonexistent.json");
  CHECK_MSG(missing.exit_code == 1, "missing scene is a solver error");

  const std::string bad = temp_file("cli_bad.json", "{broken");
  const RunResult parse = run("lens-solve --scene " + bad);
  CHECK_MSG(parse.exit_code == 1, "parse error exit 1");
  std::remove(scene.c_str());
  std::remove(bad.c_str());
}

void test_lens_normalize() {
  const RunResult r = run(
      "lens-normalize --mass 1e30 --mass 2e30 --dl 1e22 --ds 2e22 --dls 1e22");
  CHECK_MSG(r.exit_code == 0, "normalize exit");
  // two lines, second sigma twice the first
  const auto nl = r.out.find('\n');
  const double s0 = std::strtod(r.out.substr(0, nl).c_str(), nullptr);
  const double s1 = std::strtod(r.out.substr(nl + 1).c_str(), nullptr);
  CHECK_MSG(s0 > 0.0 && std::abs(s1 - 2.0 * s0) <= 1e-18, "sigma linearity");
}

void test_wilmshurst() {
  const RunResult r = run("wilmshurst --p 0,0 --p 0,0 --p 1,0", true);
  CHECK_MSG(r.exit_code == 0, "wilmshurst exit");
  CHECK_MSG(r.out.find("re,im,sense,derivative_ratio,residual,index") !=
                std::string::npos,
            "wilmshurst header");
  CHECK_MSG(r.out.find("count=4") != std::string::npos, "wilmshurst count");
}

void test_usage_errors() {
  CHECK_MSG(run("definitely-not-a-command").exit_code == 2, "unknown cmd exit 2");
  CHECK_MSG(run("orbit --c 1,0").exit_code == 2, "missing flag exit 2");
  CHECK_MSG(run("orbit --c nope --z0 0,0").exit_code == 2, "bad complex exit 2");
  CHECK_MSG(run("--help", true).exit_code == 0, "help exit 0");
  const RunResult defaults = run("--show-defaults");
  CHECK_MSG(defaults.exit_code == 0, "defaults exit");
  CHECK_MSG(defaults.out.find("max_iter=1000") != std::string::npos,
            "defaults content");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cdyn-binary>\n";
    return 2;
  }
  g_cli = argv[1];
  test_orbit();
  test_member();
  test_green();
  test_cycles();
  test_koenig();
  test_render_determinism();
  test_lens_pipeline();
  test_lens_normalize();
  test_wilmshurst();
  test_usage_errors();
  if (g_failures) {
    std::cerr << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::puts("all CLI checks passed");
  return 0;
}
