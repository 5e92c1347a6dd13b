#pragma once

#include <utility>
#include <vector>

#include "complex_ops.hpp"

namespace cdyn {

// Dense complex polynomial a0 + a1 z + ... + ad z^d, constant term first.
// The leading coefficient is nonzero unless the polynomial is identically
// zero (stored as the single coefficient 0).
class Poly {
 public:
  Poly() : coeffs_{Cx(0.0)} {}
  explicit Poly(std::vector<Cx> coeffs);

  static Poly from_roots(const std::vector<Cx>& roots, Cx leading = Cx(1.0));

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Cx(0.0); }
  const std::vector<Cx>& coeffs() const { return coeffs_; }
  Cx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Cx(0.0);
  }
  Cx leading() const { return coeffs_.back(); }
  double max_coeff_magnitude() const;

  Cx operator()(Cx z) const;

  // Value and first derivative from one Horner pass.
  std::pair<Cx, Cx> eval_with_derivative(Cx z) const;

  Poly derivative() const;
  Poly operator*(const Poly& rhs) const;
  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;

  // this(inner(z))
  Poly compose(const Poly& inner) const;

  // Coefficients of u |-> p(center + u).
  Poly taylor_shift(Cx center) const;

 private:
  std::vector<Cx> coeffs_;
};

}  // namespace cdyn
