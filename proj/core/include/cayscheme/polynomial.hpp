#pragma once

#include <string>
#include <vector>

#include "cayscheme/rational.hpp"

namespace cayscheme {

// Integer polynomial, coefficients lowest degree first. The zero
// polynomial has an empty coefficient vector; otherwise the leading
// coefficient is non-zero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly constant(const Int& v) {
    return v == 0 ? IntPoly() : IntPoly({v});
  }
  // x - r
  static IntPoly linear_root(const Int& r) { return IntPoly({-r, Int(1)}); }

  bool zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](int i) const { return c_[i]; }
  const Int& leading() const { return c_.back(); }
  bool monic() const { return !c_.empty() && c_.back() == 1; }

  Int eval(const Int& x) const;            // Horner
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  // Content (gcd of coefficients, positive) and primitive part with
  // positive leading coefficient.
  Int content() const;
  IntPoly primitive_part() const;

  // Synthetic division by (x - r). Returns quotient; `exact` is set to
  // whether the remainder was zero, i.e. r is a root.
  IntPoly divide_linear(const Int& r, bool& exact) const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

// Polynomial with rational coefficients, used for intermediate char-poly
// arithmetic over restriction matrices.
using RatPolyCoeffs = std::vector<Rat>;  // lowest degree first

}  // namespace cayscheme
