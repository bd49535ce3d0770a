#pragma once

#include <span>
#include <vector>

#include "gseries/params.hpp"
#include "gseries/scalar.hpp"

namespace gseries {

/// Maclaurin coefficients c_0..c_N of a function, truncated at order N.
///
/// Binary operations require equal orders and return that order; changing
/// the order is always an explicit call (truncated, shifted_down).
class TruncatedSeries {
 public:
  static constexpr int kMaxOrder = 64;

  explicit TruncatedSeries(int order);
  explicit TruncatedSeries(std::vector<Scalar> coeffs);

  static TruncatedSeries constant(const Scalar& c, int order);
  /// The series of x itself.
  static TruncatedSeries identity(int order);
  /// c_n = d_n / n! for d = (d_0, d_1, ..., d_N).
  static TruncatedSeries from_derivatives(std::span<const Scalar> derivs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  Scalar& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }
  std::span<const Scalar> coefficients() const { return coeffs_; }

  /// d_n = n! c_n, n = 0..N.
  std::vector<Scalar> derivatives() const;
  bool is_exact() const;

  TruncatedSeries truncated(int order) const;
  /// Divides by x^k. The first k coefficients must vanish; the result has
  /// order N - k.
  TruncatedSeries shifted_down(int k) const;
  /// Term-by-term derivative (order N - 1) and antiderivative with zero
  /// constant (order N, top term dropped).
  TruncatedSeries derivative() const;
  TruncatedSeries integral() const;

  double evaluate(double x) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

 private:
  std::vector<Scalar> coeffs_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, const Scalar& s);

/// 1/s; requires s_0 != 0.
TruncatedSeries reciprocal(const TruncatedSeries& s);

/// Coefficients of outer(inner(x)); requires inner_0 = 0.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

/// Compositional inverse t with s(t(y)) = y + O(y^{N+1}), computed by
/// Lagrange inversion: t_n = [x^{n-1}] (x / s(x))^n / n.
TruncatedSeries reversion(const TruncatedSeries& s);

TruncatedSeries exp_series(int order);
/// (1 + x)^alpha.
TruncatedSeries pow1p_series(const Scalar& alpha, int order);

/// The inverse maps g^-1 of every catalog family, by name of the function
/// they expand.
enum class ElementaryKind {
  exp_m1,           // e^x - 1
  neg_ln_1m,        // -ln(1 - x)
  sinh,             // sinh x
  sin,              // sin x
  pow_alpha_m1,     // (1 + x)^alpha - 1
  half_sq_plus_wx,  // x^2/2 + w x
  sqrt_shift,       // sqrt(alpha + beta x) - sqrt(alpha)
  inv_sq_m1,        // 1/(x - 1)^2 - 1
  odd_geom,         // x / (1 - x^2)
  lambert_pair,     // (w + x - 1) e^x + 1 - w
  log_ratio,        // -ln(1 - x)/x - 1
  expm1_ratio,      // (e^x - 1)/x - 1
  arcsin,           // arcsin x
  case_one,         // (w - 1 + e^x) x
  case_two,         // e^x (x - 2) - x + 2
  case_three,       // (2e^x - x^2 - 2x - 2)/(2x^2)
  case_four,        // (6x e^x - 12e^x - x^3 + 6x + 12)/(6x^3)
  case_five,        // alpha + (alpha + a1 - 1)x + (alpha + a2 - 2)x^2/2 + (x - alpha)e^x
  sq_arccos_shift,  // -[arccos(x + 1)]^2/(2x) - 1
};

/// Exact Maclaurin coefficients of the named map to order N (1 <= N <= 64).
/// Maps with a removable singularity at 0 are built from primitive series
/// by division by x, never by evaluating the formula at 0.
TruncatedSeries elementary(ElementaryKind kind, int order, const Params& params = {});

}  // namespace gseries
