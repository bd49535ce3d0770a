#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gseries/family.hpp"
#include "gseries/params.hpp"
#include "gseries/series.hpp"

namespace gseries {

/// Real interval with independent open/closed ends; infinite ends are open.
struct Interval {
  double lo;
  double hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const;
  bool empty() const;
  std::string to_string() const;
};

enum class Side { both, right_of_zero, left_of_zero };

std::string_view side_name(Side s);

/// One catalog entry: the function g, its inverse, and where they live.
///
/// Values are immutable after construction, and every member function is
/// const and thread-safe, so x-grids can be evaluated concurrently.
class Expansion {
 public:
  /// Builds the family with `params` completed by default_params() and
  /// validated by normalize_params(). Throws InvalidArgument.
  static Expansion make(Family f, const Params& params = {});
  /// The Taylor baseline: A5 with alpha = 1, i.e. g(x) = x.
  static Expansion taylor();

  Family family() const { return family_; }
  std::string_view id() const { return family_id(family_); }
  const Params& params() const { return params_; }
  /// Where g may be evaluated (x side).
  const Interval& domain() const { return domain_; }
  /// Image of g over its invertible branch, i.e. where g^-1 is inverted.
  const Interval& image() const { return image_; }
  Side side() const { return side_; }
  /// d_1 = (g^-1)'(0).
  double slope_at_zero() const { return d1_; }

  /// g(x). DomainError outside domain(); ConvergenceError if the numeric
  /// inversion used by C1..C6 fails.
  double g(double x) const;
  /// g^-1(y). DomainError outside the natural domain of the formula.
  double ginv(double y) const;
  double ginv_derivative(double y) const;

  std::vector<Scalar> derivative_sequence(int order) const;
  TruncatedSeries inverse_series(int order) const;

 private:
  Expansion() = default;

  double g_explicit(double x) const;
  double g_implicit(double x) const;
  double polish(double y, double x) const;
  void locate_implicit_branch();

  Family family_ = Family::A1;
  Params params_;
  Interval domain_{0, 0};
  Interval image_{0, 0};
  Side side_ = Side::both;
  double d1_ = 1.0;

  double alpha_ = 0, beta_ = 0, w_ = 0, a1_ = 0, a2_ = 0, sqrt_alpha_ = 0;

  // Maclaurin coefficients of g^-1 used below series_radius_, where the
  // closed form of a removable singularity loses precision.
  std::vector<double> series_;
  std::vector<double> series_derivative_;
  double series_radius_ = 0.0;
};

inline double eval_g(const Expansion& e, double x) { return e.g(x); }
inline double eval_ginv(const Expansion& e, double y) { return e.ginv(y); }

/// The connected part of {x in domain : |g(x)| < R} that contains 0.
/// R may be +infinity.
Interval map_domain(const Expansion& e, double radius);

}  // namespace gseries
