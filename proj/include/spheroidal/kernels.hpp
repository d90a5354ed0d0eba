#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Batch floating-point kernels behind a runtime-selected instruction set.
//
// Every kernel has a scalar reference implementation; the AVX2 variant is
// compiled in a separate translation unit with -mavx2 -mfma and chosen at
// startup when the CPU reports AVX2+FMA. SUSY_SPHEROIDAL_ISA=scalar forces
// the reference path.

namespace spheroidal::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

/// Currently selected instruction set.
Isa active_isa();
/// Overrides the selection; throws std::runtime_error if unsupported.
void set_isa(Isa isa);

struct Table {
  // out[i] = sum_k c[k] x[i]^k
  void (*horner)(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);
  // out[i] = sum_j coef[j] Lbar_{m+j}^m(x[i]); inv_a[j] = 1 / a_{m+j},
  // a_prev[j] = a_{m+j-1} (a_prev[0] = 0), norm_mm = Lbar_m^m / (1-x^2)^{m/2}.
  void (*legendre_series)(int m, double norm_mm, const double* inv_a, const double* a_prev,
                          const double* coef, std::size_t nterms, const double* x, double* out,
                          std::size_t n);
  // sum_i w[i] f[i] g[i]
  double (*weighted_dot)(const double* w, const double* f, const double* g, std::size_t n);
  // sum_i w[i] (f[i] - g[i])^2
  double (*weighted_sq_diff)(const double* w, const double* f, const double* g, std::size_t n);
};

const Table& table(Isa isa);
const Table& active();

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
double weighted_dot(std::span<const double> w, std::span<const double> f,
                    std::span<const double> g);
double weighted_sq_diff(std::span<const double> w, std::span<const double> f,
                        std::span<const double> g);

namespace detail {
extern const Table scalar_table;
#if defined(SPHEROIDAL_HAVE_AVX2)
extern const Table avx2_table;
#endif
}  // namespace detail

}  // namespace spheroidal::kernels
