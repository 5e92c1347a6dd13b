#include "lens_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace cdyn {

namespace {

double number_field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number())
    fail(Status::ParseError,
         std::string("lens scene: missing or non-numeric field \"") + key + "\"");
  return obj[key].get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

LensConfig parse_lens_scene(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    fail(Status::ParseError, std::string("lens scene: ") + e.what());
  }
  if (!j.is_object() || !j.contains("masses") || !j["masses"].is_array())
    fail(Status::ParseError, "lens scene: expected an object with a \"masses\" array");

  LensConfig cfg;
  for (const auto& jm : j["masses"]) {
    if (!jm.is_object())
      fail(Status::ParseError, "lens scene: each mass must be an object");
    PointMass m;
    m.position = Cx(number_field(jm, "re"), number_field(jm, "im"));
    m.strength = number_field(jm, "sigma");
    cfg.masses.push_back(m);
  }
  if (j.contains("source")) {
    if (!j["source"].is_object())
      fail(Status::ParseError, "lens scene: \"source\" must be an object");
    cfg.source = Cx(number_field(j["source"], "re"),
                    number_field(j["source"], "im"));
  }
  validate(cfg);  // InvalidConfig on bad strengths / duplicate positions
  return cfg;
}

LensConfig load_lens_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Status::IoError, "lens scene: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lens_scene(ss.str());
}

std::size_t write_solution_csv(std::ostream& out,
                               std::vector<LensImage> images) {
  std::sort(images.begin(), images.end(),
            [](const LensImage& a, const LensImage& b) {
              return lex_less(a.z, b.z);
            });
  std::string text = "re,im,sense,abs_rprime,residual\n";
  for (const LensImage& img : images) {
    text += format_double(img.z.real()) + "," + format_double(img.z.imag()) +
            "," +
            (img.sense == Sense::Preserving ? "preserving" : "reversing") +
            "," + format_double(img.deflection_derivative_mag) + "," +
            format_double(img.residual) + "\n";
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(Status::IoError, "solution csv: stream write failed");
  return text.size();
}

std::size_t write_wilmshurst_csv(std::ostream& out,
                                 std::vector<WilmshurstRoot> roots) {
  std::sort(roots.begin(), roots.end(),
            [](const WilmshurstRoot& a, const WilmshurstRoot& b) {
              return lex_less(a.z, b.z);
            });
  std::string text = "re,im,sense,derivative_ratio,residual,index\n";
  for (const WilmshurstRoot& r : roots) {
    text += format_double(r.z.real()) + "," + format_double(r.z.imag()) + "," +
            (r.sense == Sense::Preserving ? "preserving" : "reversing") + "," +
            format_double(r.derivative_ratio) + "," +
            format_double(r.residual) + "," + std::to_string(r.index) + "\n";
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(Status::IoError, "wilmshurst csv: stream write failed");
  return text.size();
}

}  // namespace cdyn
