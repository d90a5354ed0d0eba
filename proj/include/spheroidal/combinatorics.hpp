#pragma once

#include "spheroidal/rational.hpp"

namespace spheroidal {

/// Binomial coefficient C(n, k); zero when k < 0 or k > n.
BigInt binom(long n, long k);

/// n!! with 0!! = (-1)!! = 1. Throws std::domain_error for n < -1.
BigInt double_factorial(long n);

BigInt factorial(long n);

/// (-1)^e for any integer e.
inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace spheroidal
