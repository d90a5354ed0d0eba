#include <cmath>

#include "spheroidal/kernels.hpp"

namespace spheroidal::kernels::detail {

namespace {

void horner_scalar(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = nc; k-- > 0;) acc = acc * x[i] + c[k];
    out[i] = acc;
  }
}

void legendre_series_scalar(int m, double norm_mm, const double* inv_a, const double* a_prev,
                            const double* coef, std::size_t nterms, const double* x, double* out,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (nterms == 0) {
      out[i] = 0.0;
      continue;
    }
    const double xi = x[i];
    const double s = std::sqrt(1.0 - xi * xi);
    double p = norm_mm;
    for (int k = 0; k < m; ++k) p *= s;
    double prev = 0.0;
    double acc = coef[0] * p;
    for (std::size_t j = 0; j + 1 < nterms; ++j) {
      const double next = (xi * p - a_prev[j] * prev) * inv_a[j];
      prev = p;
      p = next;
      acc += coef[j + 1] * p;
    }
    out[i] = acc;
  }
}

double weighted_dot_scalar(const double* w, const double* f, const double* g, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i] * g[i];
  return acc;
}

double weighted_sq_diff_scalar(const double* w, const double* f, const double* g, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = f[i] - g[i];
    acc += w[i] * d * d;
  }
  return acc;
}

}  // namespace

const Table scalar_table{horner_scalar, legendre_series_scalar, weighted_dot_scalar,
                         weighted_sq_diff_scalar};

}  // namespace spheroidal::kernels::detail
