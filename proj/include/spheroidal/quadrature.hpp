#pragma once

#include <vector>

namespace spheroidal {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<long double> nodes_ld;
  std::vector<long double> weights_ld;
};

/// n-point rule; nodes by Newton iteration on P_n in long double.
QuadratureRule gauss_legendre(int n);

}  // namespace spheroidal
