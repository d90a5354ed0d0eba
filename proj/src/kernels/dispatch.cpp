#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spheroidal/kernels.hpp"

namespace spheroidal::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SPHEROIDAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("SUSY_SPHEROIDAL_ISA"); env && std::string(env) == "scalar")
    return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": span size mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("instruction set not available: " + std::string(isa_name(isa)));
  selected().store(isa, std::memory_order_relaxed);
}

const Table& table(Isa isa) {
#if defined(SPHEROIDAL_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw std::runtime_error("avx2 kernels requested on a CPU without AVX2/FMA");
    return detail::avx2_table;
  }
#else
  if (isa == Isa::avx2) throw std::runtime_error("avx2 kernels not compiled in");
#endif
  return detail::scalar_table;
}

const Table& active() { return table(active_isa()); }

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
  check_sizes(x.size(), out.size(), "horner");
  active().horner(coeffs.data(), coeffs.size(), x.data(), out.data(), x.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> f,
                    std::span<const double> g) {
  check_sizes(w.size(), f.size(), "weighted_dot");
  check_sizes(w.size(), g.size(), "weighted_dot");
  return active().weighted_dot(w.data(), f.data(), g.data(), w.size());
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> f,
                        std::span<const double> g) {
  check_sizes(w.size(), f.size(), "weighted_sq_diff");
  check_sizes(w.size(), g.size(), "weighted_sq_diff");
  return active().weighted_sq_diff(w.data(), f.data(), g.data(), w.size());
}

}  // namespace spheroidal::kernels
