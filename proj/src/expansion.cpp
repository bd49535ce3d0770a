#include "gseries/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gseries/bell.hpp"
#include "gseries/errors.hpp"
#include "gseries/lambert_w.hpp"

namespace gseries {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kSeriesOrder = 40;

// Newton inversion of g^-1 for the implicit families.
constexpr int kNewtonIterations = 60;
constexpr int kBisectionIterations = 200;
constexpr double kResidualTolerance = 1e-14;

// Outermost u probed when locating the monotone branch of an implicit g^-1.
constexpr double kScanUpper = 700.0;
constexpr double kScanLower = -1e8;
constexpr double kUnboundedX = 1e6;

Interval all_reals() { return {-kInf, kInf, false, false}; }

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string family_error(Family f, const std::string& what) {
  return std::string(family_id(f)) + ": " + what;
}

}  // namespace

bool Interval::contains(double x) const {
  if (std::isnan(x)) return false;
  bool above = lo_closed ? x >= lo : x > lo;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Interval::empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

std::string Interval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + format_double(lo) + ", " + format_double(hi) +
         (hi_closed ? "]" : ")");
}

std::string_view side_name(Side s) {
  switch (s) {
    case Side::both: return "both";
    case Side::right_of_zero: return "right_of_zero";
    case Side::left_of_zero: return "left_of_zero";
  }
  return "both";
}

Expansion Expansion::taylor() {
  Params p;
  p.alpha = Scalar(1);
  return make(Family::A5, p);
}

Expansion Expansion::make(Family f, const Params& given) {
  Expansion e;
  e.family_ = f;
  e.params_ = normalize_params(f, given);
  const Params& p = e.params_;
  if (p.alpha) e.alpha_ = p.alpha->to_double();
  if (p.beta) e.beta_ = p.beta->to_double();
  if (p.w) e.w_ = p.w->to_double();
  if (p.a1) e.a1_ = p.a1->to_double();
  if (p.a2) e.a2_ = p.a2->to_double();
  if (f == Family::A7) e.sqrt_alpha_ = sqrt(*p.alpha).to_double();
  e.d1_ = gseries::derivative_sequence(f, p, 1)[0].to_double();

  switch (f) {
    case Family::A1:
      e.domain_ = {-1.0, kInf, false, false};
      e.image_ = all_reals();
      break;
    case Family::A2:
      e.domain_ = all_reals();
      e.image_ = {-kInf, 1.0, false, false};
      break;
    case Family::A3:
      e.domain_ = all_reals();
      e.image_ = all_reals();
      break;
    case Family::A4:
      e.domain_ = {-1.0, 1.0, true, true};
      e.image_ = {-std::numbers::pi / 2, std::numbers::pi / 2, true, true};
      break;
    case Family::A5:
      if (e.alpha_ > 0) {
        e.domain_ = {-1.0, kInf, true, false};
        e.image_ = {-1.0, kInf, true, false};
      } else {
        e.domain_ = {-1.0, kInf, false, false};
        e.image_ = {-1.0, kInf, false, false};
      }
      break;
    case Family::A6:
      e.domain_ = {-e.w_ * e.w_ / 2, kInf, true, false};
      e.image_ = e.w_ > 0 ? Interval{-e.w_, kInf, true, false} : Interval{-kInf, -e.w_, false, true};
      break;
    case Family::A7:
      e.domain_ = all_reals();
      e.image_ = e.beta_ > 0 ? Interval{-e.alpha_ / e.beta_, kInf, true, false}
                             : Interval{-kInf, -e.alpha_ / e.beta_, false, true};
      break;
    case Family::A8:
      e.domain_ = {-1.0, kInf, false, false};
      e.image_ = {-kInf, 1.0, false, false};
      break;
    case Family::A9:
      e.domain_ = all_reals();
      e.image_ = {-1.0, 1.0, false, false};
      break;
    case Family::A10:
      if (e.w_ > 0) {
        e.domain_ = {1.0 - e.w_ - std::exp(-e.w_), kInf, true, false};
        e.image_ = {-e.w_, kInf, true, false};
      } else {
        // The principal branch of W does not pass through g(0) = 0 here.
        e.domain_ = {0.0, 0.0, false, false};
        e.image_ = {0.0, 0.0, false, false};
      }
      break;
    case Family::A11:
      e.domain_ = {0.0, kInf, true, false};
      e.image_ = {0.0, 1.0, true, false};
      e.side_ = Side::right_of_zero;
      break;
    case Family::A12:
      e.domain_ = {-1.0, 0.0, false, true};
      e.image_ = {-kInf, 0.0, false, true};
      e.side_ = Side::left_of_zero;
      break;
    case Family::A13:
      e.domain_ = all_reals();
      e.image_ = {-1.0, 1.0, true, true};
      break;
    default:
      break;
  }

  // Removable singularities of g^-1 at 0 and the radius below which their
  // closed forms cancel too badly.
  switch (f) {
    case Family::A11: e.series_radius_ = 0.25; break;
    case Family::A12: e.series_radius_ = 1.0; break;
    case Family::C3:
    case Family::C4: e.series_radius_ = 4.0; break;
    case Family::C6: e.series_radius_ = 0.5; break;
    default: break;
  }
  if (e.series_radius_ > 0) {
    TruncatedSeries s = elementary(inverse_kind(f), kSeriesOrder, p);
    TruncatedSeries ds = s.derivative();
    for (int n = 0; n <= s.order(); ++n) e.series_.push_back(s[n].to_double());
    for (int n = 0; n <= ds.order(); ++n) e.series_derivative_.push_back(ds[n].to_double());
  }

  if (!has_explicit_g(f)) e.locate_implicit_branch();
  return e;
}

void Expansion::locate_implicit_branch() {
  const double u_min = family_ == Family::C6 ? -2.0 : kScanLower;
  const double u_max = family_ == Family::C6 ? 0.0 : kScanUpper;
  const double orientation = d1_ > 0 ? 1.0 : -1.0;

  auto increasing = [&](double u) {
    double d = ginv_derivative(u);
    return std::isfinite(d) && d * orientation > 0;
  };

  // Walks away from 0 until g^-1 stops being monotone, then bisects for the
  // turning point.
  auto scan = [&](double direction, double limit, bool& closed) {
    double prev = 0.0;
    double step = 1e-3;
    while (true) {
      double u = direction * step;
      bool at_limit = direction > 0 ? u >= limit : u <= limit;
      if (at_limit) u = limit;
      if (u == 0.0) {
        closed = true;
        return 0.0;
      }
      bool inside = at_limit ? true : increasing(u);
      if (at_limit && family_ == Family::C6) {
        closed = true;
        return u;
      }
      if (!inside) {
        double a = prev, b = u;
        for (int i = 0; i < 200 && std::abs(b - a) > 4 * kEps * std::max(1.0, std::abs(a)); ++i) {
          double mid = 0.5 * (a + b);
          if (increasing(mid)) {
            a = mid;
          } else {
            b = mid;
          }
        }
        closed = true;
        return a;
      }
      if (at_limit) {
        closed = false;
        return u;
      }
      prev = u;
      step *= 1.2;
    }
  };

  bool lo_closed = false, hi_closed = false;
  double u_lo = scan(-1.0, u_min, lo_closed);
  double u_hi = scan(1.0, u_max, hi_closed);
  double x_a = u_lo == 0.0 ? 0.0 : ginv(u_lo);
  double x_b = u_hi == 0.0 ? 0.0 : ginv(u_hi);
  // A branch that is still monotone at the scan limit and has run off to
  // large x is taken to continue to infinity.
  if (!lo_closed && std::abs(x_a) >= kUnboundedX) {
    x_a = std::copysign(kInf, x_a);
    u_lo = -kInf;
  }
  if (!hi_closed && std::abs(x_b) >= kUnboundedX) {
    x_b = std::copysign(kInf, x_b);
    u_hi = kInf;
  }
  image_ = {u_lo, u_hi, lo_closed, hi_closed};
  if (orientation > 0) {
    domain_ = {x_a, x_b, lo_closed, hi_closed};
  } else {
    domain_ = {x_b, x_a, hi_closed, lo_closed};
  }
  if (domain_.lo == 0.0 && domain_.lo_closed) side_ = Side::right_of_zero;
  if (domain_.hi == 0.0 && domain_.hi_closed) side_ = Side::left_of_zero;
}

double Expansion::g(double x) const {
  if (!domain_.contains(x)) {
    if (family_ == Family::A10 && w_ <= 0) {
      throw DomainError(family_error(family_, "w <= 0 needs the secondary branch of W, which is not provided"));
    }
    throw DomainError(family_error(family_, "x = " + format_double(x) + " outside domain " + domain_.to_string()));
  }
  if (x == 0.0) return 0.0;
  return has_explicit_g(family_) ? g_explicit(x) : g_implicit(x);
}

double Expansion::g_explicit(double x) const {
  switch (family_) {
    case Family::A1: return std::log1p(x);
    case Family::A2: return -std::expm1(-x);
    case Family::A3: return std::asinh(x);
    case Family::A4: return std::asin(x);
    case Family::A5:
      if (x == -1.0) return -1.0;
      return std::expm1(std::log1p(x) / alpha_);
    case Family::A6: {
      // sign(w) sqrt(2x + w^2) - w, rationalized.
      double root = std::sqrt(std::max(0.0, 2.0 * x + w_ * w_));
      return 2.0 * x / (std::copysign(root, w_) + w_);
    }
    case Family::A7: return (x * x + 2.0 * sqrt_alpha_ * x) / beta_;
    case Family::A8: return -std::expm1(-0.5 * std::log1p(x));
    case Family::A9:
      // (-1 + sqrt(4x^2 + 1))/(2x), rationalized; the limit at 0 is 0.
      return 2.0 * x / (1.0 + std::sqrt(4.0 * x * x + 1.0));
    case Family::A10: {
      double arg = std::exp(w_ - 1.0) * (w_ + x - 1.0);
      return lambert_w0(arg) + 1.0 - w_;
    }
    case Family::A11: {
      double u = x + 1.0;
      double y = lambert_w0(-std::exp(-u) * u) / u + 1.0;
      return polish(y, x);
    }
    case Family::A12: {
      double v = 1.0 / (1.0 + x);
      double wv = lambert_w0(-std::exp(-v) * v);
      double y = -(wv + x * wv + 1.0) / (1.0 + x);
      return polish(y, x);
    }
    case Family::A13: return std::sin(x);
    default: break;
  }
  throw InvalidArgument("unreachable family");
}

// Newton steps on g^-1(y) = x from a closed-form estimate; they recover the
// digits the Lambert W argument loses next to its branch point.
double Expansion::polish(double y, double x) const {
  for (int i = 0; i < 4; ++i) {
    if (!image_.contains(y)) break;
    double r = ginv(y) - x;
    double d = ginv_derivative(y);
    if (!std::isfinite(r) || !std::isfinite(d) || d == 0.0) break;
    double next = y - r / d;
    if (!image_.contains(next) || !std::isfinite(next)) break;
    if (std::abs(ginv(next) - x) > std::abs(r)) break;
    bool done = std::abs(next - y) <= 2 * kEps * std::abs(y);
    y = next;
    if (done) break;
  }
  return y;
}

double Expansion::g_implicit(double x) const {
  const double orientation = d1_ > 0 ? 1.0 : -1.0;
  auto residual = [&](double u) { return orientation * (ginv(u) - x); };
  const double tol = kResidualTolerance * std::max(1.0, std::abs(x));
  const double u_lo = image_.lo;
  const double u_hi = image_.hi;

  // Bracket grown from [-c|x|, c|x|] within the monotone branch.
  const double c = 2.0 / std::abs(d1_);
  double a = std::max(u_lo, -c * std::abs(x));
  double b = std::min(u_hi, c * std::abs(x));
  double ra = residual(a), rb = residual(b);
  for (int grow = 0; grow < 2200 && !(ra <= 0 && rb >= 0); ++grow) {
    if (a == u_lo && b == u_hi) break;
    if (ra > 0) {
      a = std::max(u_lo, a == 0 ? -1.0 : 2.0 * a);
      ra = residual(a);
    }
    if (rb < 0) {
      b = std::min(u_hi, b == 0 ? 1.0 : 2.0 * b);
      rb = residual(b);
    }
  }
  if (!(ra <= 0 && rb >= 0)) {
    if (std::abs(ra) <= tol) return a;
    if (std::abs(rb) <= tol) return b;
    throw ConvergenceError(family_error(family_, "no bracket for g(" + format_double(x) + ")"));
  }

  double u = std::clamp(x / d1_, a, b);
  for (int i = 0; i < kNewtonIterations + kBisectionIterations; ++i) {
    double r = residual(u);
    if (std::abs(r) <= tol) return u;
    if (r < 0) {
      a = u;
    } else {
      b = u;
    }
    if (b - a <= 2 * kEps * std::max(std::abs(a), std::abs(b))) return u;
    double next = 0.5 * (a + b);
    if (i < kNewtonIterations) {
      double d = orientation * ginv_derivative(u);
      double newton = u - r / d;
      if (std::isfinite(newton) && newton > a && newton < b) next = newton;
    }
    if (next == u) return u;
    u = next;
  }
  double r = residual(u);
  if (std::abs(r) <= 1e3 * tol) return u;
  throw ConvergenceError(family_error(family_, "Newton inversion did not converge at x = " + format_double(x)));
}

double Expansion::ginv(double y) const {
  if (std::isnan(y)) throw DomainError(family_error(family_, "NaN argument"));
  if (series_radius_ > 0 && std::abs(y) < series_radius_) return horner(series_, y);
  auto domain_error = [&](const char* what) {
    return DomainError(family_error(family_, std::string("g^-1(") + format_double(y) + "): " + what));
  };
  switch (family_) {
    case Family::A1: return std::expm1(y);
    case Family::A2:
      if (y >= 1.0) throw domain_error("needs y < 1");
      return -std::log1p(-y);
    case Family::A3: return std::sinh(y);
    case Family::A4: return std::sin(y);
    case Family::A5:
      if (y < -1.0 || (y == -1.0 && alpha_ < 0)) throw domain_error("needs 1 + y > 0");
      if (y == -1.0) return -1.0;
      return std::expm1(alpha_ * std::log1p(y));
    case Family::A6: return y * y / 2.0 + w_ * y;
    case Family::A7: {
      double arg = alpha_ + beta_ * y;
      if (arg < 0.0) throw domain_error("needs alpha + beta y >= 0");
      return beta_ * y / (std::sqrt(arg) + sqrt_alpha_);
    }
    case Family::A8:
      if (y == 1.0) throw domain_error("pole at y = 1");
      return 1.0 / ((y - 1.0) * (y - 1.0)) - 1.0;
    case Family::A9:
      if (std::abs(y) == 1.0) throw domain_error("pole at |y| = 1");
      return y / (1.0 - y * y);
    case Family::A10: return (w_ - 1.0) * std::expm1(y) + y * std::exp(y);
    case Family::A11:
      if (y >= 1.0) throw domain_error("needs y < 1");
      return -std::log1p(-y) / y - 1.0;
    case Family::A12: return std::expm1(y) / y - 1.0;
    case Family::A13:
      if (std::abs(y) > 1.0) throw domain_error("needs |y| <= 1");
      return std::asin(y);
    case Family::C1: return (w_ + std::expm1(y)) * y;
    case Family::C2: return (y - 2.0) * std::expm1(y);
    case Family::C3: return (2.0 * std::exp(y) - y * y - 2.0 * y - 2.0) / (2.0 * y * y);
    case Family::C4:
      return (6.0 * y * std::exp(y) - 12.0 * std::exp(y) - y * y * y + 6.0 * y + 12.0) / (6.0 * y * y * y);
    case Family::C5:
      return (alpha_ + a1_ - 1.0) * y + 0.5 * (alpha_ + a2_ - 2.0) * y * y + y * std::exp(y) -
             alpha_ * std::expm1(y);
    case Family::C6: {
      if (y < -2.0 || y > 0.0) throw domain_error("arccos needs -2 <= y <= 0");
      double a = std::acos(y + 1.0);
      return -a * a / (2.0 * y) - 1.0;
    }
  }
  throw InvalidArgument("unreachable family");
}

double Expansion::ginv_derivative(double y) const {
  if (series_radius_ > 0 && std::abs(y) < series_radius_) return horner(series_derivative_, y);
  switch (family_) {
    case Family::A1: return std::exp(y);
    case Family::A2: return 1.0 / (1.0 - y);
    case Family::A3: return std::cosh(y);
    case Family::A4: return std::cos(y);
    case Family::A5: return alpha_ * std::pow(1.0 + y, alpha_ - 1.0);
    case Family::A6: return y + w_;
    case Family::A7: return beta_ / (2.0 * std::sqrt(alpha_ + beta_ * y));
    case Family::A8: return 2.0 / std::pow(1.0 - y, 3);
    case Family::A9: return (1.0 + y * y) / ((1.0 - y * y) * (1.0 - y * y));
    case Family::A10: return std::exp(y) * (w_ + y);
    case Family::A11: return 1.0 / ((1.0 - y) * y) + std::log1p(-y) / (y * y);
    case Family::A12: return (y * std::exp(y) - std::expm1(y)) / (y * y);
    case Family::A13: return 1.0 / std::sqrt(1.0 - y * y);
    case Family::C1: return w_ + std::expm1(y) + y * std::exp(y);
    case Family::C2: return std::expm1(y) + (y - 2.0) * std::exp(y);
    case Family::C3: {
      double n = 2.0 * std::exp(y) - y * y - 2.0 * y - 2.0;
      double dn = 2.0 * std::exp(y) - 2.0 * y - 2.0;
      return (dn * y - 2.0 * n) / (2.0 * y * y * y);
    }
    case Family::C4: {
      double e = std::exp(y);
      double n = 6.0 * y * e - 12.0 * e - y * y * y + 6.0 * y + 12.0;
      double dn = 6.0 * y * e - 6.0 * e - 3.0 * y * y + 6.0;
      return (dn * y - 3.0 * n) / (6.0 * y * y * y * y);
    }
    case Family::C5:
      return (alpha_ + a1_ - 1.0) + (alpha_ + a2_ - 2.0) * y + std::exp(y) * (1.0 + y - alpha_);
    case Family::C6: {
      double a = std::acos(y + 1.0);
      double da = -1.0 / std::sqrt(-y * (2.0 + y));
      return -a * da / y + a * a / (2.0 * y * y);
    }
  }
  throw InvalidArgument("unreachable family");
}

std::vector<Scalar> Expansion::derivative_sequence(int order) const {
  return gseries::derivative_sequence(family_, params_, order);
}

TruncatedSeries Expansion::inverse_series(int order) const {
  return elementary(inverse_kind(family_), order, params_);
}

namespace {

// Outer end of {|g| < R} on one side of 0, for g monotone on that side.
// Returns the endpoint and whether it is closed.
std::pair<double, bool> monotone_edge(const Expansion& e, double radius, double direction) {
  const Interval& dom = e.domain();
  const double bound = direction > 0 ? dom.hi : dom.lo;
  const bool bound_closed = direction > 0 ? dom.hi_closed : dom.lo_closed;
  if (bound == 0.0) return {0.0, bound_closed};

  // The whole side qualifies when the limit of g toward the bound does.
  const Interval& img = e.image();
  const bool toward_hi = (direction > 0) == (e.slope_at_zero() > 0);
  const double limit = std::abs(toward_hi ? img.hi : img.lo);
  const bool attained = toward_hi ? img.hi_closed : img.lo_closed;
  if (limit < radius || (limit == radius && !attained)) return {bound, bound_closed};

  auto below = [&](double x) {
    try {
      double v = e.g(x);
      return std::isfinite(v) && std::abs(v) < radius;
    } catch (const DomainError&) {
      return false;
    }
  };

  double inside = 0.0;
  double outside;
  if (std::isfinite(bound)) {
    double probe = bound_closed ? bound : std::nextafter(bound, 0.0);
    if (below(probe)) return {bound, bound_closed};
    outside = probe;
  } else {
    double x = direction * 1e-3;
    while (below(x)) {
      inside = x;
      if (std::abs(x) > 1e300) return {direction * kInf, false};
      x *= 2.0;
    }
    outside = x;
  }
  for (int i = 0; i < 400; ++i) {
    double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (below(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return {outside, false};
}

}  // namespace

Interval map_domain(const Expansion& e, double radius) {
  if (!(radius > 0)) throw InvalidArgument("map_domain: radius must be positive");
  const Interval& dom = e.domain();
  if (std::isinf(radius)) return dom;

  if (e.family() == Family::A13) {
    if (radius > 1.0) return dom;
    double edge = std::asin(radius);
    return {-edge, edge, false, false};
  }
  if (e.family() == Family::A7) {
    // |x^2 + 2 s x| < R |beta| with s = sqrt(alpha).
    const Params& p = e.params();
    double s = sqrt(*p.alpha).to_double();
    double rb = radius * std::abs(p.beta->to_double());
    double outer = std::sqrt(s * s + rb);
    Interval u{-s - outer, -s + outer, false, false};
    if (s * s > rb) u.lo = -s + std::sqrt(s * s - rb);
    return u;
  }

  auto [hi, hi_closed] = monotone_edge(e, radius, 1.0);
  auto [lo, lo_closed] = monotone_edge(e, radius, -1.0);
  return {lo, hi, lo_closed, hi_closed};
}

}  // namespace gseries
