#include "spheroidal/combinatorics.hpp"

#include <stdexcept>

namespace spheroidal {

BigInt binom(long n, long k) {
  if (n < 0) throw std::domain_error("binom: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt double_factorial(long n) {
  if (n < -1) throw std::domain_error("double_factorial: n must be >= -1");
  if (n <= 0) return 1;
  BigInt r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: n must be nonnegative");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace spheroidal
