#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace gseries {

/// A number that is either an exact rational of unbounded size or a
/// double-precision value tagged as approximate.
///
/// Rationals are kept canonical (lowest terms, positive denominator). Any
/// operation that touches an approximate operand produces an approximate
/// result, so exactness is a property that can only be lost, never faked.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpz_class& v) : value_(mpq_class(v)) {}
  explicit Scalar(mpq_class v);

  static Scalar ratio(long num, long den);
  static Scalar approximate(double v) { return Scalar(Approx{v}); }
  /// The exact binary value of a finite double.
  static Scalar from_double_exact(double v);
  /// Accepts integers ("-3"), fractions ("2/5") and decimals ("0.25",
  /// "1.5e-3"); all of them are read exactly.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const;
  double to_double() const;

  bool is_zero() const;
  int sign() const;
  bool is_integer() const;
  Scalar abs() const;
  Scalar pow(long exponent) const;

  /// "p/q" (or "p") for exact values, 17 significant digits otherwise.
  std::string to_string() const;
  /// Locale-independent decimal rendering with 17 significant digits.
  std::string decimal() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  // Exact values compare exactly; a comparison involving an approximate
  // operand is carried out in double precision.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  struct Approx {
    double v;
  };
  explicit Scalar(Approx a) : value_(a.v) {}

  std::variant<mpq_class, double> value_;
};

/// Square root that stays exact when the argument is the square of a
/// rational; std::nullopt otherwise (or when the argument is negative or
/// approximate).
std::optional<Scalar> exact_sqrt(const Scalar& s);

/// exact_sqrt when possible, otherwise an approximate value. Throws
/// DomainError for negative arguments.
Scalar sqrt(const Scalar& s);

/// Correctly rounded (nearest) conversion of a rational to double.
double to_double_rounded(const mpq_class& q);

/// Rendering used by every text output: 17 significant digits, '.' as the
/// decimal point, independent of the locale.
std::string format_double(double v);

}  // namespace gseries
