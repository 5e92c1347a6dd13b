#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dynamics.hpp"

namespace cdyn {

enum class RenderMode { Julia = 0, Mandelbrot, Basins };

struct ImageSpec {
  int width = 0;
  int height = 0;
  Cx center{};
  double scale = 0.0;  // complex units per pixel
  int max_iter = kDefaultMaxIter;
  RenderMode mode = RenderMode::Mandelbrot;
  Cx c{};  // parameter for julia / basins modes
};

struct RasterBuffer {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // RGB, row-major, top row first
};

// Deterministic sinusoidal palette.
std::array<std::uint8_t, 3> palette(double v);

// Screen convention: x grows rightward with Re, y grows downward with
// decreasing Im; pixel (width/2, height/2) sits at the center.
inline Cx pixel_point(const ImageSpec& spec, int i, int j) {
  return spec.center + Cx(spec.scale * (i - spec.width / 2),
                          -spec.scale * (j - spec.height / 2));
}

// Tile-parallel rendering over disjoint output ranges; the bytes do not
// depend on the thread count.  threads <= 0 picks the hardware count.
RasterBuffer render(const ImageSpec& spec, int threads = 0);

// Binary PPM (P6), returns the byte count written.
std::size_t write_ppm(const RasterBuffer& buf, std::ostream& out);

}  // namespace cdyn
