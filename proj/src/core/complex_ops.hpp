#pragma once

#include <complex>
#include <utility>

namespace cdyn {

using Cx = std::complex<double>;

inline bool lex_less(const Cx& a, const Cx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Product z*w and power z^n evaluated in polar form (moduli multiply,
// arguments add).  0^0 is defined as 1.
std::pair<Cx, Cx> polar_mul_pow(Cx z, Cx w, long n);

}  // namespace cdyn
