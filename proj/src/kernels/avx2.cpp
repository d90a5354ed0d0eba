#include <immintrin.h>

#include <cmath>

#include "spheroidal/kernels.hpp"

namespace spheroidal::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void horner_avx2(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = nc; k-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(c[k]));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = nc; k-- > 0;) acc = std::fma(acc, x[i], c[k]);
    out[i] = acc;
  }
}

void legendre_series_avx2(int m, double norm_mm, const double* inv_a, const double* a_prev,
                          const double* coef, std::size_t nterms, const double* x, double* out,
                          std::size_t n) {
  if (nterms == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d s = _mm256_sqrt_pd(_mm256_fnmadd_pd(xv, xv, one));
    __m256d p = _mm256_set1_pd(norm_mm);
    for (int k = 0; k < m; ++k) p = _mm256_mul_pd(p, s);
    __m256d prev = _mm256_setzero_pd();
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(coef[0]), p);
    for (std::size_t j = 0; j + 1 < nterms; ++j) {
      const __m256d t = _mm256_fnmadd_pd(_mm256_set1_pd(a_prev[j]), prev, _mm256_mul_pd(xv, p));
      const __m256d next = _mm256_mul_pd(t, _mm256_set1_pd(inv_a[j]));
      prev = p;
      p = next;
      acc = _mm256_fmadd_pd(_mm256_set1_pd(coef[j + 1]), p, acc);
    }
    _mm256_storeu_pd(out + i, acc);
  }
  if (i < n) scalar_table.legendre_series(m, norm_mm, inv_a, a_prev, coef, nterms, x + i, out + i, n - i);
}

double weighted_dot_avx2(const double* w, const double* f, const double* g, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wf = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i));
    acc = _mm256_fmadd_pd(wf, _mm256_loadu_pd(g + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += w[i] * f[i] * g[i];
  return hsum(acc) + tail;
}

double weighted_sq_diff_avx2(const double* w, const double* f, const double* g, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(f + i), _mm256_loadu_pd(g + i));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), d), d, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = f[i] - g[i];
    tail += w[i] * d * d;
  }
  return hsum(acc) + tail;
}

}  // namespace

const Table avx2_table{horner_avx2, legendre_series_avx2, weighted_dot_avx2, weighted_sq_diff_avx2};

}  // namespace spheroidal::kernels::detail
