#include "spheroidal/legendre.hpp"

#include <cmath>
#include <stdexcept>

#include "spheroidal/kernels.hpp"

namespace spheroidal {

long double legendre_coupling(int l, int m) {
  if (m < 0) throw std::invalid_argument("legendre_coupling: m must be nonnegative");
  if (l < m) return 0.0L;
  const long double ll = l;
  const long double mm = m;
  return std::sqrt((ll + 1 - mm) * (ll + 1 + mm) / ((2 * ll + 1) * (2 * ll + 3)));
}

long double legendre_mm_norm(int m) {
  if (m < 0) throw std::invalid_argument("legendre_mm_norm: m must be nonnegative");
  long double prod = 1.0L;
  for (int i = 1; i <= m; ++i) prod *= static_cast<long double>(2 * i - 1) / (2 * i);
  return std::sqrt((2.0L * m + 1.0L) / 2.0L * prod);
}

long double normalized_legendre(int l, int m, long double x) {
  if (m < 0 || l < m) throw std::invalid_argument("normalized_legendre: need 0 <= m <= l");
  if (!(x >= -1.0L && x <= 1.0L)) throw std::domain_error("normalized_legendre: x outside [-1, 1]");
  const long double s = std::sqrt((1.0L - x) * (1.0L + x));
  long double p = legendre_mm_norm(m);
  for (int k = 0; k < m; ++k) p *= s;
  long double prev = 0.0L;
  for (int j = m; j < l; ++j) {
    const long double next = (x * p - legendre_coupling(j - 1, m) * prev) / legendre_coupling(j, m);
    prev = p;
    p = next;
  }
  return p;
}

LegendreExpansion::LegendreExpansion(int m, std::vector<double> coef)
    : m_(m), coef_(std::move(coef)), norm_mm_(static_cast<double>(legendre_mm_norm(m))) {
  for (std::size_t j = 0; j + 1 < coef_.size(); ++j) {
    const int l = m + static_cast<int>(j);
    inv_a_.push_back(static_cast<double>(1.0L / legendre_coupling(l, m)));
    a_prev_.push_back(static_cast<double>(legendre_coupling(l - 1, m)));
  }
}

long double LegendreExpansion::operator()(long double x) const {
  if (coef_.empty()) return 0.0L;
  const long double s = std::sqrt((1.0L - x) * (1.0L + x));
  long double p = legendre_mm_norm(m_);
  for (int k = 0; k < m_; ++k) p *= s;
  long double prev = 0.0L;
  long double acc = coef_[0] * p;
  for (std::size_t j = 0; j + 1 < coef_.size(); ++j) {
    const int l = m_ + static_cast<int>(j);
    const long double next = (x * p - legendre_coupling(l - 1, m_) * prev) / legendre_coupling(l, m_);
    prev = p;
    p = next;
    acc += coef_[j + 1] * p;
  }
  return acc;
}

void LegendreExpansion::evaluate(std::span<const double> x, std::span<double> out) const {
  if (x.size() != out.size()) throw std::invalid_argument("LegendreExpansion::evaluate: size mismatch");
  for (double xi : x) {
    if (!(xi >= -1.0 && xi <= 1.0)) throw std::domain_error("LegendreExpansion: x outside [-1, 1]");
  }
  kernels::active().legendre_series(m_, norm_mm_, inv_a_.data(), a_prev_.data(), coef_.data(),
                                    coef_.size(), x.data(), out.data(), x.size());
}

}  // namespace spheroidal
