#pragma once

#include <gmpxx.h>

#include "gseries/scalar.hpp"

namespace gseries {

mpz_class factorial(long n);

/// Binomial coefficient with an integer top of either sign:
/// C(t, b) = t(t-1)...(t-b+1)/b!, and 0 for b < 0.
mpz_class binomial(long top, long bottom);

/// Generalized binomial coefficient falling_factorial(top, bottom) / bottom!.
Scalar binomial(const Scalar& top, long bottom);

/// <alpha>_n = alpha (alpha - 1) ... (alpha - n + 1); the empty product is 1.
Scalar falling_factorial(const Scalar& alpha, long n);

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
Scalar double_factorial(long n);

/// Stirling numbers of the second kind from the alternating sum
///   {n, m} = (1/m!) sum_k (-1)^k C(m, k) (m - k)^n,   0^0 = 1.
/// Values are memoized; safe to call concurrently.
Scalar stirling2(long n, long m);

/// Signed Stirling numbers of the first kind, evaluated from the double
/// alternating sum over stirling2
///   [n, m] = sum_j (-1)^j C(n-1+j, n-m+j) C(2n-m, n-m-j) {n-m+j, j}.
/// (-1)^(n-m) [n, m] is the unsigned (cycle-counting) value.
Scalar stirling1(long n, long m);

// Integer forms of the two tables above.
mpz_class stirling2_int(long n, long m);
mpz_class stirling1_int(long n, long m);

}  // namespace gseries
