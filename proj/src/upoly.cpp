#include "spheroidal/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace spheroidal {

UPoly::UPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int power) {
  if (power < 0) throw std::invalid_argument("UPoly::monomial: negative power");
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational{};
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational UPoly::eval(const Rational& u) const {
  if (u.sign() < 0 || u > Rational(1)) throw std::domain_error("UPoly::eval: u outside [0, 1]");
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

long double UPoly::eval(long double u) const {
  if (!(u >= 0.0L && u <= 1.0L)) throw std::domain_error("UPoly::eval: u outside [0, 1]");
  return eval_unchecked(u);
}

long double UPoly::eval_unchecked(long double u) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + it->to_long_double();
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
  return UPoly(std::move(d));
}

std::vector<double> UPoly::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_double());
  return out;
}

UPoly& UPoly::operator+=(const UPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPoly lop_apply(const UPoly& p, int m) {
  if (p.is_zero()) return {};
  const auto& a = p.coeffs();
  std::vector<Rational> q(a.size() + 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long kk = static_cast<long>(k);
    q[k] += a[k] * Rational(2L * m + 2 * kk + 2);
    q[k + 1] -= a[k] * Rational(2L * m + 2 * kk + 3);
  }
  return UPoly(std::move(q));
}

UPoly mul_w(const UPoly& pa, const UPoly& pb) {
  const UPoly prod = pa * pb;
  // u (1 - u) = u - u^2
  return prod * UPoly({Rational(0), Rational(1), Rational(-1)});
}

UPoly integrate_w(const UPoly& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> j(p.coeffs().size() + 1);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k)
    j[k + 1] = p.coeffs()[k] / Rational(2L * static_cast<long>(k) + 2);
  return UPoly(std::move(j));
}

}  // namespace spheroidal
