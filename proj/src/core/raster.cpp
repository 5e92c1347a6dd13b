#include "raster.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "errors.hpp"

namespace cdyn {

namespace {

constexpr int kTileSize = 64;
constexpr double kBig2 = kEscapeRadiusBig * kEscapeRadiusBig;

// Smooth escape value: n + 1 - log2(ln|z_n| / ln R) removes iteration bands.
inline double smooth_value(int n, double mag2) {
  const double v =
      n + 1.0 - std::log2(0.5 * std::log(mag2) / std::log(kEscapeRadiusBig));
  return v > 0.0 ? v : 0.0;
}

struct BasinTarget {
  std::vector<Cx> points;  // attracting cycle, iteration order
};

void render_tile(const ImageSpec& spec, const BasinTarget* basin,
                 RasterBuffer& buf, int tx, int ty) {
  const int x0 = tx * kTileSize;
  const int y0 = ty * kTileSize;
  const int x1 = std::min(x0 + kTileSize, spec.width);
  const int y1 = std::min(y0 + kTileSize, spec.height);

  for (int j = y0; j < y1; ++j) {
    for (int i = x0; i < x1; ++i) {
      const Cx p = pixel_point(spec, i, j);
      std::array<std::uint8_t, 3> rgb{0, 0, 0};

      double zx, zy, cx, cy;
      if (spec.mode == RenderMode::Mandelbrot) {
        zx = 0.0;
        zy = 0.0;
        cx = p.real();
        cy = p.imag();
      } else {
        zx = p.real();
        zy = p.imag();
        cx = spec.c.real();
        cy = spec.c.imag();
      }

      if (spec.mode == RenderMode::Basins) {
        const auto& pts = basin->points;
        for (int n = 0; n <= spec.max_iter; ++n) {
          bool settled = false;
          for (std::size_t k = 0; k < pts.size(); ++k) {
            const double dx = zx - pts[k].real();
            const double dy = zy - pts[k].imag();
            if (dx * dx + dy * dy < 1e-12) {  // within 1e-6 of cycle point k
              rgb = palette(10.0 * static_cast<double>(k));
              settled = true;
              break;
            }
          }
          if (settled) break;
          const double mag2 = zx * zx + zy * zy;
          if (mag2 > kBig2) {
            rgb = palette(smooth_value(n, mag2));
            break;
          }
          const double t = zx * zx - zy * zy + cx;
          zy = 2.0 * zx * zy + cy;
          zx = t;
        }
      } else {
        for (int n = 0; n <= spec.max_iter; ++n) {
          const double mag2 = zx * zx + zy * zy;
          if (mag2 > kBig2) {
            rgb = palette(smooth_value(n, mag2));
            break;
          }
          const double t = zx * zx - zy * zy + cx;
          zy = 2.0 * zx * zy + cy;
          zx = t;
        }
      }

      const std::size_t off =
          3 * (static_cast<std::size_t>(j) * spec.width + i);
      buf.pixels[off] = rgb[0];
      buf.pixels[off + 1] = rgb[1];
      buf.pixels[off + 2] = rgb[2];
    }
  }
}

}  // namespace

std::array<std::uint8_t, 3> palette(double v) {
  auto channel = [v](double phase) {
    double x = std::floor(127.5 * (1.0 + std::cos(0.15 * v + phase)));
    if (x < 0.0) x = 0.0;
    if (x > 255.0) x = 255.0;
    return static_cast<std::uint8_t>(x);
  };
  return {channel(0.0), channel(2.094), channel(4.188)};
}

RasterBuffer render(const ImageSpec& spec, int threads) {
  if (spec.width < 1 || spec.height < 1)
    fail(Status::InvalidArgument, "render: width and height must be >= 1");
  if (!(spec.scale > 0.0))
    fail(Status::InvalidArgument, "render: scale must be positive");
  if (spec.max_iter < 1)
    fail(Status::InvalidArgument, "render: max_iter must be >= 1");

  BasinTarget basin;
  if (spec.mode == RenderMode::Basins) {
    if (auto cyc = attracting_cycle(QuadMap{spec.c}, kMaxCyclePeriod))
      basin.points = cyc->points;
    else
      fail(Status::NoAttractor,
           "render: no attracting cycle of period <= 8 for basins mode");
  }

  RasterBuffer buf;
  buf.width = spec.width;
  buf.height = spec.height;
  buf.pixels.assign(3 * static_cast<std::size_t>(spec.width) * spec.height, 0);

  const int tiles_x = (spec.width + kTileSize - 1) / kTileSize;
  const int tiles_y = (spec.height + kTileSize - 1) / kTileSize;
  const int tile_count = tiles_x * tiles_y;

  int n_threads = threads;
  if (n_threads <= 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= tile_count) return;
      render_tile(spec, &basin, buf, t % tiles_x, t / tiles_x);
    }
  };

  if (n_threads == 1 || tile_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return buf;
}

std::size_t write_ppm(const RasterBuffer& buf, std::ostream& out) {
  if (buf.width < 1 || buf.height < 1 ||
      buf.pixels.size() != 3 * static_cast<std::size_t>(buf.width) * buf.height)
    fail(Status::InvalidArgument, "write_ppm: malformed buffer");
  const std::string header = "P6\n" + std::to_string(buf.width) + " " +
                             std::to_string(buf.height) + "\n255\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(buf.pixels.data()),
            static_cast<std::streamsize>(buf.pixels.size()));
  if (!out) fail(Status::IoError, "write_ppm: stream write failed");
  return header.size() + buf.pixels.size();
}

}  // namespace cdyn
