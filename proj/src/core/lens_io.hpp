#pragma once

#include <iosfwd>
#include <string>

#include "lens.hpp"
#include "wilmshurst.hpp"

namespace cdyn {

// Scene JSON: {"masses": [{"re":..,"im":..,"sigma":..}, ...],
//              "source": {"re":..,"im":..}}   (source optional, default 0)
LensConfig parse_lens_scene(const std::string& json_text);
LensConfig load_lens_config(const std::string& path);

// Doubles are printed with 17 significant digits so parsing them back
// reproduces the exact bit pattern.
std::string format_double(double v);

// Header "re,im,sense,abs_rprime,residual"; rows sorted by (re, im).
std::size_t write_solution_csv(std::ostream& out,
                               std::vector<LensImage> images);

// Header "re,im,sense,derivative_ratio,residual,index".
std::size_t write_wilmshurst_csv(std::ostream& out,
                                 std::vector<WilmshurstRoot> roots);

}  // namespace cdyn
