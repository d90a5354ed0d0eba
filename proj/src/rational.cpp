#include "spheroidal/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace spheroidal {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
  }
  std::string digits(text.substr(start));
  BigInt v(digits, 10);
  return text[0] == '-' ? BigInt(-v) : v;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + std::string(text));
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E')
      throw std::invalid_argument("malformed number: " + std::string(text));
    const BigInt e = parse_integer(text.substr(pos + 1));
    if (!e.fits_slong_p() || abs(e) > 100000)
      throw std::invalid_argument("exponent out of range: " + std::string(text));
    exponent = e.get_si();
  }
  BigInt num(mantissa, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  if (shift >= 0) return Rational(BigInt(num * pow10(static_cast<unsigned long>(shift))));
  return Rational(num, pow10(static_cast<unsigned long>(-shift)));
}

}  // namespace

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text));
}

std::string Rational::str() const {
  if (den() == 1) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

long double to_long_double(const BigInt& value) {
  if (sgn(value) == 0) return 0.0L;
  BigInt mag = abs(value);
  const long bits = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2));
  long scale = 0;
  if (bits > 64) {
    scale = bits - 64;
    mpz_fdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(scale));
  }
  const long double head = static_cast<long double>(mpz_get_ui(mag.get_mpz_t()));
  const long double r = std::ldexp(head, static_cast<int>(scale));
  return sgn(value) < 0 ? -r : r;
}

long double Rational::to_long_double() const {
  if (is_zero()) return 0.0L;
  const long bn = static_cast<long>(mpz_sizeinbase(num().get_mpz_t(), 2));
  const long bd = static_cast<long>(mpz_sizeinbase(den().get_mpz_t(), 2));
  // Quotient carries at least 70 significant bits before the final rounding.
  const long shift = 70 - (bn - bd);
  BigInt q;
  if (shift >= 0) {
    BigInt n = num();
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), den().get_mpz_t());
  } else {
    BigInt d = den();
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
    mpz_tdiv_q(q.get_mpz_t(), num().get_mpz_t(), d.get_mpz_t());
  }
  return std::ldexp(spheroidal::to_long_double(q), static_cast<int>(-shift));
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  q_ /= rhs.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::pow(unsigned exponent) const {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), exponent);
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace spheroidal
