#include "complex_ops.hpp"

#include <cmath>

#include "errors.hpp"

namespace cdyn {

std::pair<Cx, Cx> polar_mul_pow(Cx z, Cx w, long n) {
  if (n < 0) fail(Status::InvalidArgument, "polar_mul_pow: n must be >= 0");
  const double rz = std::abs(z);
  const double rw = std::abs(w);
  const double az = std::arg(z);
  const double aw = std::arg(w);
  const Cx product = std::polar(rz * rw, az + aw);
  Cx power;
  if (n == 0) {
    power = Cx(1.0, 0.0);
  } else if (rz == 0.0) {
    power = Cx(0.0, 0.0);
  } else {
    power = std::polar(std::pow(rz, static_cast<double>(n)),
                       static_cast<double>(n) * az);
  }
  return {product, power};
}

}  // namespace cdyn
