#include "gseries/combinatorics.hpp"

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "gseries/errors.hpp"

namespace gseries {

namespace {

// Lower-triangular table of lazily computed entries (n, m), 0 <= m <= n.
// Entries are filled outside the lock so that computing one entry may
// recursively request others.
class TriangularCache {
 public:
  template <typename Compute>
  mpz_class get(long n, long m, Compute&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<long>(rows_.size()) && rows_[n][m]) return *rows_[n][m];
    }
    mpz_class value = compute(n, m);
    std::unique_lock lock(mutex_);
    while (static_cast<long>(rows_.size()) <= n) {
      rows_.emplace_back(rows_.size() + 1);
    }
    rows_[n][m] = value;
    return value;
  }

 private:
  std::shared_mutex mutex_;
  std::vector<std::vector<std::optional<mpz_class>>> rows_;
};

TriangularCache& stirling2_cache() {
  static TriangularCache cache;
  return cache;
}

TriangularCache& stirling1_cache() {
  static TriangularCache cache;
  return cache;
}

mpz_class ipow(long base, long e) {
  if (e == 0) return 1;  // 0^0 = 1
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

mpz_class stirling2_sum(long n, long m) {
  mpz_class sum = 0;
  for (long k = 0; k <= m; ++k) {
    mpz_class term = binomial(m, k) * ipow(m - k, n);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), sum.get_mpz_t(), factorial(m).get_mpz_t());
  return q;
}

mpz_class stirling1_sum(long n, long m) {
  mpz_class sum = 0;
  for (long j = 0; j <= n - m; ++j) {
    mpz_class term = binomial(n - 1 + j, n - m + j) * binomial(2 * n - m, n - m - j) *
                     stirling2_int(n - m + j, j);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

void check_indices(long n, long m) {
  if (n < 0 || m < 0) throw InvalidArgument("Stirling indices must be non-negative");
}

}  // namespace

mpz_class factorial(long n) {
  if (n < 0) throw InvalidArgument("factorial of a negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class binomial(long top, long bottom) {
  if (bottom < 0) return 0;
  mpz_class r;
  if (top >= 0) {
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
    return r;
  }
  // C(-t, b) = (-1)^b C(t + b - 1, b)
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(bottom - top - 1), static_cast<unsigned long>(bottom));
  return bottom % 2 == 0 ? r : mpz_class(-r);
}

Scalar falling_factorial(const Scalar& alpha, long n) {
  if (n < 0) throw InvalidArgument("falling factorial length must be non-negative");
  Scalar r(1);
  for (long k = 0; k < n; ++k) r *= alpha - Scalar(k);
  return r;
}

Scalar binomial(const Scalar& top, long bottom) {
  if (bottom < 0) return Scalar(0);
  if (top.is_exact() && top.is_integer() && top.rational().get_num().fits_slong_p()) {
    return Scalar(binomial(top.rational().get_num().get_si(), bottom));
  }
  return falling_factorial(top, bottom) / Scalar(factorial(bottom));
}

Scalar double_factorial(long n) {
  if (n < -1) throw InvalidArgument("double factorial is defined for n >= -1");
  mpz_class r;
  if (n <= 0) return Scalar(1);
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Scalar(r);
}

mpz_class stirling2_int(long n, long m) {
  check_indices(n, m);
  if (m > n) return 0;
  return stirling2_cache().get(n, m, stirling2_sum);
}

mpz_class stirling1_int(long n, long m) {
  check_indices(n, m);
  if (m > n) return 0;
  return stirling1_cache().get(n, m, stirling1_sum);
}

Scalar stirling2(long n, long m) { return Scalar(stirling2_int(n, m)); }

Scalar stirling1(long n, long m) { return Scalar(stirling1_int(n, m)); }

}  // namespace gseries
