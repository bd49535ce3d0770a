#include "gseries/scalar.hpp"

#include <mpfr.h>

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "gseries/errors.hpp"

namespace gseries {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Scalar::Scalar(mpq_class v) : value_(std::move(v)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(mpq_class(mpz_class(num), mpz_class(den)));
}

Scalar Scalar::from_double_exact(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite value has no rational form");
  return Scalar(mpq_class(v));
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Scalar(mpq_class(num, den));
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty()) {
      throw InvalidArgument("bad exponent in '" + std::string(text) + "'");
    }
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if ((!whole.empty() && !is_digits(whole)) || (!frac.empty() && !is_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw InvalidArgument("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<long>(frac.size());
  } else {
    if (!is_digits(mantissa)) throw InvalidArgument("not a number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }

  mpq_class q(mpz_class(digits, 10));
  long scale = exponent - fraction_digits;
  if (scale > 4096 || scale < -4096) throw InvalidArgument("exponent out of range");
  if (scale >= 0) {
    q *= pow10(static_cast<unsigned long>(scale));
  } else {
    q /= pow10(static_cast<unsigned long>(-scale));
  }
  if (negative) q = -q;
  return Scalar(std::move(q));
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw InvalidArgument("scalar is approximate");
  return std::get<mpq_class>(value_);
}

double to_double_rounded(const mpq_class& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

double Scalar::to_double() const {
  if (is_exact()) return to_double_rounded(std::get<mpq_class>(value_));
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_)) == 0;
  return std::get<double>(value_) == 0.0;
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

bool Scalar::is_integer() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_den() == 1;
  double d = std::get<double>(value_);
  return std::isfinite(d) && std::floor(d) == d;
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::pow(long exponent) const {
  if (exponent == 0) return Scalar(1);  // 0^0 = 1
  if (!is_exact()) return approximate(std::pow(std::get<double>(value_), static_cast<double>(exponent)));
  const mpq_class& q = std::get<mpq_class>(value_);
  if (exponent < 0 && sgn(q) == 0) throw DomainError("zero raised to a negative power");
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  return exponent > 0 ? Scalar(mpq_class(num, den)) : Scalar(mpq_class(den, num));
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str(10);
  return format_double(std::get<double>(value_));
}

std::string Scalar::decimal() const { return format_double(to_double()); }

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return approximate(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  } else {
    value_ = to_double() + rhs.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = to_double() - rhs.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = to_double() * rhs.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_exact() && rhs.is_zero()) throw DomainError("division by exact zero");
  if (is_exact() && rhs.is_exact()) {
    std::get<mpq_class>(value_) /= std::get<mpq_class>(rhs.value_);
  } else {
    value_ = to_double() / rhs.to_double();
  }
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) {
    return std::get<mpq_class>(lhs.value_) == std::get<mpq_class>(rhs.value_);
  }
  return lhs.to_double() == rhs.to_double();
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) {
    int c = cmp(std::get<mpq_class>(lhs.value_), std::get<mpq_class>(rhs.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return lhs.to_double() <=> rhs.to_double();
}

std::optional<Scalar> exact_sqrt(const Scalar& s) {
  if (!s.is_exact() || s.sign() < 0) return std::nullopt;
  const mpq_class& q = s.rational();
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  return Scalar(mpq_class(num, den));
}

Scalar sqrt(const Scalar& s) {
  if (s.sign() < 0) throw DomainError("square root of a negative number");
  if (auto r = exact_sqrt(s)) return *r;
  return Scalar::approximate(std::sqrt(s.to_double()));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace gseries
