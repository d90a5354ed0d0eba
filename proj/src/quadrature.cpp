#include "spheroidal/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spheroidal {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes_ld.assign(static_cast<std::size_t>(n), 0.0L);
  rule.weights_ld.assign(static_cast<std::size_t>(n), 0.0L);
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 1.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0L;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-19L * std::fabs(x) + 1e-30L) break;
    }
    {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
    }
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes_ld[static_cast<std::size_t>(i)] = -x;
    rule.nodes_ld[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights_ld[static_cast<std::size_t>(i)] = w;
    rule.weights_ld[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes_ld[static_cast<std::size_t>(n / 2)] = 0.0L;
  rule.nodes.assign(rule.nodes_ld.begin(), rule.nodes_ld.end());
  rule.weights.assign(rule.weights_ld.begin(), rule.weights_ld.end());
  return rule;
}

}  // namespace spheroidal
