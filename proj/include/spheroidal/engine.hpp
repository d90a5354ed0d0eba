#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheroidal/rational.hpp"
#include "spheroidal/upoly.hpp"

namespace spheroidal {

/// Raised when the order-n superpotential cannot be written as
/// sin cos P_n(u) with deg P_n <= n - 1.
class InconsistentOrder : public std::runtime_error {
public:
  InconsistentOrder(int order, const std::string& detail);
  int order() const { return order_; }

private:
  int order_;
};

/// One order of the superpotential expansion: W_n = sin cos P(u), plus 2E_{0n}.
struct SeriesTerm {
  int n = 0;
  UPoly P;
  Rational twoE;
};

/// Superpotential W = W_0 + sum alpha^n W_n and ground eigenvalue coefficients.
/// W_0 = -(m + 1/2) cot(theta) is implicit; 2E_00 = m(m+1).
class PerturbationSeries {
public:
  PerturbationSeries(int m, std::vector<SeriesTerm> terms);

  int m() const { return m_; }
  int order() const { return static_cast<int>(terms_.size()); }
  const Rational& twoE00() const { return twoE00_; }
  const std::vector<SeriesTerm>& terms() const { return terms_; }
  /// Term for order n, 1 <= n <= order().
  const SeriesTerm& term(int n) const;
  /// 2E_{0n} for 0 <= n <= order().
  Rational twoE(int n) const;

private:
  int m_;
  Rational twoE00_;
  std::vector<SeriesTerm> terms_;
};

/// Solves W_n' + (2m+1) cot W_n = RHS_n for W_n = sin cos P_n(u).
///
/// RHS_1 = cos^2 + 2E_01, RHS_n = sum_{j=1}^{n-1} W_j W_{n-j} + 2E_0n. The
/// coefficient system is triangular; the top equation fixes P_n's leading
/// coefficient, back substitution fixes the rest, and the constant equation
/// fixes 2E_0n. `prior` must hold orders 1..n-1 in order.
SeriesTerm solve_order(int n, int m, std::span<const SeriesTerm> prior);

PerturbationSeries build_series(int m, int order);

/// sum_{n=0}^{order} 2E_0n alpha^n: the eigenvalue E of the angular equation.
Rational eigenvalue(const PerturbationSeries& series, const Rational& alpha, int order);
long double eigenvalue(const PerturbationSeries& series, long double alpha, int order);

/// Evaluation context for the ground eigenfunction at a fixed alpha.
class GroundState {
public:
  GroundState(const PerturbationSeries& series, long double alpha, int order);

  const PerturbationSeries& series() const { return *series_; }
  long double alpha() const { return alpha_; }
  int order() const { return order_; }
  /// S(w) with Theta_0 = w^{m/2} exp(-S(w)), w = 1 - x^2 = sin^2 theta.
  const std::vector<long double>& exponent_coeffs() const { return exponent_; }

private:
  const PerturbationSeries* series_;
  long double alpha_;
  int order_;
  std::vector<long double> exponent_;
};

/// Unnormalized ground eigenfunction Theta_0(x), x in [-1, 1].
/// Orders <= 2 use the closed exponential form directly; higher orders use
/// exp(-sum alpha^n integrate_w(P_n)(1 - x^2)).
long double theta0(const GroundState& state, long double x);
/// Batch double-precision evaluation through the SIMD kernel layer.
void theta0_batch(const GroundState& state, std::span<const double> x, std::span<double> out);

/// Per power of alpha (index 0..order), the polynomial in w = 1 - x^2 such
/// that Theta_0 = w^{m/2} sum alpha^k poly_k(w) + O(alpha^{order+1}).
/// Only orders up to 2 are offered.
std::vector<UPoly> theta0_poly_expansion(const PerturbationSeries& series, int order);

/// max over theta in [0, pi] of |sin cos P_n(sin^2)|.
double max_abs_w(const PerturbationSeries& series, int n);

/// Superpotential pieces at theta (long double): W and dW/dtheta, truncated
/// at `order`. Derivatives are taken from the product rule, not lop_apply.
struct SuperpotentialValue {
  long double w;
  long double dw;
};
SuperpotentialValue superpotential(const PerturbationSeries& series, long double alpha, int order,
                                   long double theta);

}  // namespace spheroidal
