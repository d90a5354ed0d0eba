#pragma once

#include <span>
#include <vector>

namespace spheroidal {

/// Three-term coupling a_l in x Lbar_l^m = a_l Lbar_{l+1}^m + a_{l-1} Lbar_{l-1}^m
/// for the L2[-1,1]-orthonormal associated Legendre functions.
/// a_l = sqrt((l+1-m)(l+1+m) / ((2l+1)(2l+3))); zero for l < m.
long double legendre_coupling(int l, int m);

/// Lbar_m^m(x) / (1 - x^2)^{m/2}: sqrt((2m+1)/2 * prod_{i<=m} (2i-1)/(2i)).
long double legendre_mm_norm(int m);

/// Orthonormal Lbar_l^m(x), positive leading factor (no Condon-Shortley phase),
/// by upward recurrence from Lbar_m^m.
long double normalized_legendre(int l, int m, long double x);

/// Sum_j coef[j] Lbar_{m+j}^m(x) over a grid, via the SIMD kernel layer.
class LegendreExpansion {
public:
  LegendreExpansion(int m, std::vector<double> coef);

  int m() const { return m_; }
  const std::vector<double>& coefficients() const { return coef_; }

  /// Scalar long double evaluation.
  long double operator()(long double x) const;
  void evaluate(std::span<const double> x, std::span<double> out) const;

private:
  int m_;
  std::vector<double> coef_;
  std::vector<double> inv_a_;
  std::vector<double> a_prev_;
  double norm_mm_;
};

}  // namespace spheroidal
