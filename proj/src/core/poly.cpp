#include "poly.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace cdyn {

namespace {

std::vector<Cx> trimmed(std::vector<Cx> c) {
  while (c.size() > 1 && c.back() == Cx(0.0)) c.pop_back();
  if (c.empty()) c.push_back(Cx(0.0));
  return c;
}

}  // namespace

Poly::Poly(std::vector<Cx> coeffs) : coeffs_(trimmed(std::move(coeffs))) {}

Poly Poly::from_roots(const std::vector<Cx>& roots, Cx leading) {
  // Multiply in bit-reversed order over the angle-sorted roots.  Factors then
  // alternate around the root circle and the partial-product coefficients
  // stay flat instead of swelling combinatorially.
  std::vector<Cx> ordered = roots;
  std::sort(ordered.begin(), ordered.end(),
            [](const Cx& a, const Cx& b) { return std::arg(a) < std::arg(b); });
  const std::size_t n = ordered.size();
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < std::max<std::size_t>(n, 1)) ++bits;
  std::vector<Cx> interleaved;
  interleaved.reserve(n);
  for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
    std::size_t rev = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (bits - 1 - b);
    if (rev < n) interleaved.push_back(ordered[rev]);
  }

  std::vector<Cx> c{leading};
  for (const Cx& r : interleaved) {
    c.push_back(Cx(0.0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Poly(std::move(c));
}

double Poly::max_coeff_magnitude() const {
  double m = 0.0;
  for (const Cx& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

Cx Poly::operator()(Cx z) const {
  Cx v = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) v = v * z + coeffs_[k];
  return v;
}

std::pair<Cx, Cx> Poly::eval_with_derivative(Cx z) const {
  Cx v = coeffs_.back();
  Cx d = Cx(0.0);
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    d = d * z + v;
    v = v * z + coeffs_[k];
  }
  return {v, d};
}

Poly Poly::derivative() const {
  if (coeffs_.size() == 1) return Poly();
  std::vector<Cx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::operator*(const Poly& rhs) const {
  if (is_zero() || rhs.is_zero()) return Poly();
  std::vector<Cx> c(coeffs_.size() + rhs.coeffs_.size() - 1, Cx(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return Poly(std::move(c));
}

Poly Poly::operator+(const Poly& rhs) const {
  std::vector<Cx> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Cx(0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) + rhs.coeff(static_cast<int>(k));
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& rhs) const {
  std::vector<Cx> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Cx(0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) - rhs.coeff(static_cast<int>(k));
  return Poly(std::move(c));
}

Poly Poly::compose(const Poly& inner) const {
  Poly result(std::vector<Cx>{coeffs_.back()});
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    result = result * inner;
    result = result + Poly(std::vector<Cx>{coeffs_[k]});
  }
  return result;
}

Poly Poly::taylor_shift(Cx center) const {
  // Repeated synthetic division; b[k] becomes the k-th Taylor coefficient.
  std::vector<Cx> b = coeffs_;
  const int d = degree();
  for (int k = 0; k <= d; ++k)
    for (int j = d - 1; j >= k; --j) b[j] += center * b[j + 1];
  return Poly(std::move(b));
}

}  // namespace cdyn
