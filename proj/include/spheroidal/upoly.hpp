#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "spheroidal/rational.hpp"

namespace spheroidal {

/// Polynomial in u = sin^2(theta) with exact rational coefficients.
///
/// coeffs()[k] multiplies u^k. Trailing zeros are always trimmed, so two
/// UPolys are equal iff their coefficient lists are equal; the zero
/// polynomial has no coefficients and degree -1.
class UPoly {
public:
  UPoly() = default;
  UPoly(std::initializer_list<Rational> coeffs);
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly monomial(const Rational& c, int power);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of u^k; zero beyond the degree.
  Rational coeff(int k) const;

  /// Exact Horner evaluation. Throws std::domain_error for u outside [0, 1].
  Rational eval(const Rational& u) const;
  /// Floating-point Horner evaluation, same domain rule.
  long double eval(long double u) const;

  /// Evaluation without the [0, 1] domain guard (used for w = 1 - x^2 forms
  /// and internal algebra).
  long double eval_unchecked(long double u) const;

  UPoly derivative() const;
  std::vector<double> to_doubles() const;

  UPoly& operator+=(const UPoly& rhs);
  UPoly& operator-=(const UPoly& rhs);
  UPoly& operator*=(const Rational& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
  /// Plain polynomial product in u.
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;

  friend bool operator==(const UPoly&, const UPoly&) = default;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Q with W' + (2m+1) cot(theta) W = Q(u) for W = sin cos P(u).
/// Monomial rule: u^k -> (2m+2k+2) u^k - (2m+2k+3) u^{k+1}.
UPoly lop_apply(const UPoly& p, int m);

/// R with (sin cos Pa)(sin cos Pb) = R(u), i.e. u (1 - u) Pa Pb.
UPoly mul_w(const UPoly& pa, const UPoly& pb);

/// J with d/dtheta J(sin^2 theta) = sin cos P(sin^2 theta) and J(0) = 0.
UPoly integrate_w(const UPoly& p);

}  // namespace spheroidal
