#include "gseries/series.hpp"

#include <cmath>
#include <string>

#include "gseries/combinatorics.hpp"
#include "gseries/errors.hpp"

namespace gseries {

std::string Params::key() const {
  std::string out;
  auto put = [&out](const char* name, const std::optional<Scalar>& v) {
    if (!v) return;
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += v->is_exact() ? v->to_string() : "~" + v->to_string();
  };
  put("alpha", alpha);
  put("beta", beta);
  put("w", w);
  put("a1", a1);
  put("a2", a2);
  return out;
}

TruncatedSeries::TruncatedSeries(int order) {
  if (order < 0) throw InvalidArgument("series order must be non-negative");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Scalar(0));
}

TruncatedSeries::TruncatedSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("series needs at least one coefficient");
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, int order) {
  TruncatedSeries s(order);
  s[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::identity(int order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = Scalar(1);
  return s;
}

TruncatedSeries TruncatedSeries::from_derivatives(std::span<const Scalar> derivs) {
  std::vector<Scalar> c;
  c.reserve(derivs.size());
  for (std::size_t n = 0; n < derivs.size(); ++n) {
    c.push_back(derivs[n] / Scalar(factorial(static_cast<long>(n))));
  }
  return TruncatedSeries(std::move(c));
}

std::vector<Scalar> TruncatedSeries::derivatives() const {
  std::vector<Scalar> d;
  d.reserve(coeffs_.size());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    d.push_back(coeffs_[n] * Scalar(factorial(static_cast<long>(n))));
  }
  return d;
}

bool TruncatedSeries::is_exact() const {
  for (const auto& c : coeffs_) {
    if (!c.is_exact()) return false;
  }
  return true;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  if (order < 0 || order > this->order()) throw InvalidArgument("truncation order out of range");
  return TruncatedSeries(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries TruncatedSeries::shifted_down(int k) const {
  if (k < 0 || k > order()) throw InvalidArgument("shift exceeds series order");
  for (int n = 0; n < k; ++n) {
    if (!coeffs_[static_cast<std::size_t>(n)].is_zero()) {
      throw InvalidArgument("cannot divide by x^" + std::to_string(k) + ": low coefficients do not vanish");
    }
  }
  return TruncatedSeries(std::vector<Scalar>(coeffs_.begin() + k, coeffs_.end()));
}

TruncatedSeries TruncatedSeries::derivative() const {
  if (order() == 0) return TruncatedSeries(0);
  TruncatedSeries d(order() - 1);
  for (int n = 1; n <= order(); ++n) d[n - 1] = (*this)[n] * Scalar(n);
  return d;
}

TruncatedSeries TruncatedSeries::integral() const {
  TruncatedSeries s(order());
  for (int n = 1; n <= order(); ++n) s[n] = (*this)[n - 1] / Scalar(n);
  return s;
}

double TruncatedSeries::evaluate(double x) const {
  double acc = 0.0;
  for (int n = order(); n >= 0; --n) acc = acc * x + (*this)[n].to_double();
  return acc;
}

namespace {

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) {
    throw InvalidArgument("series order mismatch: " + std::to_string(a.order()) + " vs " +
                          std::to_string(b.order()));
  }
}

const Scalar& require(const std::optional<Scalar>& p, const char* name) {
  if (!p) throw InvalidArgument(std::string("missing parameter ") + name);
  return *p;
}

const Scalar& require_nonzero(const std::optional<Scalar>& p, const char* name) {
  const Scalar& v = require(p, name);
  if (v.is_zero()) throw InvalidArgument(std::string("parameter ") + name + " must be nonzero");
  return v;
}

TruncatedSeries monomial(const Scalar& c, int power, int order) {
  TruncatedSeries s(order);
  if (power <= order) s[power] = c;
  return s;
}

}  // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries r = a;
  for (int n = 0; n <= a.order(); ++n) r[n] += b[n];
  return r;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  TruncatedSeries r = a;
  for (int n = 0; n <= a.order(); ++n) r[n] -= b[n];
  return r;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b);
  const int order = a.order();
  TruncatedSeries r(order);
  for (int i = 0; i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

TruncatedSeries scale(const TruncatedSeries& a, const Scalar& s) {
  TruncatedSeries r = a;
  for (int n = 0; n <= a.order(); ++n) r[n] *= s;
  return r;
}

TruncatedSeries reciprocal(const TruncatedSeries& s) {
  if (s[0].is_zero()) throw InvalidArgument("reciprocal of a series with zero constant term");
  const int order = s.order();
  TruncatedSeries r(order);
  Scalar inv0 = Scalar(1) / s[0];
  r[0] = inv0;
  for (int n = 1; n <= order; ++n) {
    Scalar acc(0);
    for (int k = 1; k <= n; ++k) {
      if (!s[k].is_zero()) acc += s[k] * r[n - k];
    }
    r[n] = -acc * inv0;
  }
  return r;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  require_same_order(outer, inner);
  if (!inner[0].is_zero()) throw InvalidArgument("compose: inner series must have zero constant term");
  const int order = inner.order();
  TruncatedSeries acc = TruncatedSeries::constant(outer[order], order);
  for (int n = order - 1; n >= 0; --n) {
    acc = mul(acc, inner);
    acc[0] += outer[n];
  }
  return acc;
}

TruncatedSeries reversion(const TruncatedSeries& s) {
  const int order = s.order();
  if (order < 1) throw InvalidArgument("reversion needs order >= 1");
  if (!s[0].is_zero()) throw InvalidArgument("reversion: series must vanish at 0");
  if (s[1].is_zero()) throw InvalidArgument("reversion: linear coefficient must be nonzero");

  // phi = x / s(x), of order N - 1.
  TruncatedSeries phi = reciprocal(s.shifted_down(1));
  TruncatedSeries power = phi;
  TruncatedSeries t(order);
  for (int n = 1; n <= order; ++n) {
    t[n] = power[n - 1] / Scalar(n);
    if (n < order) power = mul(power, phi);
  }
  return t;
}

TruncatedSeries exp_series(int order) {
  TruncatedSeries s(order);
  Scalar term(1);
  for (int n = 0; n <= order; ++n) {
    if (n > 0) term /= Scalar(n);
    s[n] = term;
  }
  return s;
}

TruncatedSeries pow1p_series(const Scalar& alpha, int order) {
  TruncatedSeries s(order);
  for (int n = 0; n <= order; ++n) s[n] = binomial(alpha, n);
  return s;
}

namespace {

TruncatedSeries arcsin_series(int order) {
  // arcsin' = (1 - x^2)^(-1/2)
  TruncatedSeries minus_x2 = monomial(Scalar(-1), 2, order);
  TruncatedSeries dz = compose(pow1p_series(Scalar::ratio(-1, 2), order), minus_x2);
  return dz.integral();
}

// [arccos(1 + x)]^2 = -2x P(-x/2)^2 with P(s) = arcsin(sqrt s)/sqrt s, so
// -[arccos(1 + x)]^2/(2x) - 1 = P(-x/2)^2 - 1.
TruncatedSeries sq_arccos_shift_series(int order) {
  TruncatedSeries as = arcsin_series(2 * order + 1);
  TruncatedSeries p(order);
  for (int n = 0; n <= order; ++n) p[n] = as[2 * n + 1];
  TruncatedSeries half = compose(p, monomial(Scalar::ratio(-1, 2), 1, order));
  TruncatedSeries sq = mul(half, half);
  sq[0] -= Scalar(1);
  return sq;
}

}  // namespace

namespace {

TruncatedSeries build_elementary(ElementaryKind kind, int n_max, const Params& params) {
  TruncatedSeries s(n_max);
  switch (kind) {
    case ElementaryKind::exp_m1: {
      s = exp_series(n_max);
      s[0] = Scalar(0);
      return s;
    }
    case ElementaryKind::neg_ln_1m:
      for (int n = 1; n <= n_max; ++n) s[n] = Scalar::ratio(1, n);
      return s;
    case ElementaryKind::sinh:
    case ElementaryKind::sin: {
      TruncatedSeries e = exp_series(n_max);
      for (int n = 1; n <= n_max; n += 2) {
        bool negative = kind == ElementaryKind::sin && (n / 2) % 2 == 1;
        s[n] = negative ? -e[n] : e[n];
      }
      return s;
    }
    case ElementaryKind::pow_alpha_m1: {
      const Scalar& alpha = require_nonzero(params.alpha, "alpha");
      s = pow1p_series(alpha, n_max);
      s[0] = Scalar(0);
      return s;
    }
    case ElementaryKind::half_sq_plus_wx: {
      const Scalar& w = require_nonzero(params.w, "w");
      s[1] = w;
      if (n_max >= 2) s[2] = Scalar::ratio(1, 2);
      return s;
    }
    case ElementaryKind::sqrt_shift: {
      const Scalar& alpha = require(params.alpha, "alpha");
      const Scalar& beta = require_nonzero(params.beta, "beta");
      if (alpha.sign() <= 0) throw InvalidArgument("sqrt_shift needs alpha > 0");
      // sqrt(alpha) [(1 + beta x / alpha)^(1/2) - 1]
      TruncatedSeries inner = monomial(beta / alpha, 1, n_max);
      s = compose(pow1p_series(Scalar::ratio(1, 2), n_max), inner);
      s[0] = Scalar(0);
      return scale(s, sqrt(alpha));
    }
    case ElementaryKind::inv_sq_m1: {
      // (1 - x)^-2 - 1
      s = compose(pow1p_series(Scalar(-2), n_max), monomial(Scalar(-1), 1, n_max));
      s[0] -= Scalar(1);
      return s;
    }
    case ElementaryKind::odd_geom: {
      TruncatedSeries denom = TruncatedSeries::constant(Scalar(1), n_max);
      if (n_max >= 2) denom[2] = Scalar(-1);
      return mul(TruncatedSeries::identity(n_max), reciprocal(denom));
    }
    case ElementaryKind::lambert_pair: {
      const Scalar& w = require_nonzero(params.w, "w");
      TruncatedSeries lin = TruncatedSeries::constant(w - Scalar(1), n_max);
      lin[1] = Scalar(1);
      s = mul(lin, exp_series(n_max));
      s[0] += Scalar(1) - w;
      return s;
    }
    case ElementaryKind::log_ratio: {
      TruncatedSeries num = build_elementary(ElementaryKind::neg_ln_1m, n_max + 1, params);
      s = num.shifted_down(1);
      s[0] -= Scalar(1);
      return s;
    }
    case ElementaryKind::expm1_ratio: {
      TruncatedSeries num = build_elementary(ElementaryKind::exp_m1, n_max + 1, params);
      s = num.shifted_down(1);
      s[0] -= Scalar(1);
      return s;
    }
    case ElementaryKind::arcsin:
      return arcsin_series(n_max);
    case ElementaryKind::case_one: {
      const Scalar& w = require_nonzero(params.w, "w");
      TruncatedSeries e = exp_series(n_max);
      e[0] += w - Scalar(1);
      return mul(e, TruncatedSeries::identity(n_max));
    }
    case ElementaryKind::case_two: {
      TruncatedSeries lin = TruncatedSeries::constant(Scalar(-2), n_max);
      lin[1] = Scalar(1);
      s = mul(exp_series(n_max), lin);
      s[1] -= Scalar(1);
      s[0] += Scalar(2);
      return s;
    }
    case ElementaryKind::case_three: {
      const int m = n_max + 2;
      TruncatedSeries num = scale(exp_series(m), Scalar(2));
      num[2] -= Scalar(1);
      num[1] -= Scalar(2);
      num[0] -= Scalar(2);
      return scale(num.shifted_down(2), Scalar::ratio(1, 2));
    }
    case ElementaryKind::case_four: {
      const int m = n_max + 3;
      TruncatedSeries e = exp_series(m);
      TruncatedSeries num = sub(scale(mul(TruncatedSeries::identity(m), e), Scalar(6)), scale(e, Scalar(12)));
      num[3] -= Scalar(1);
      num[1] += Scalar(6);
      num[0] += Scalar(12);
      return scale(num.shifted_down(3), Scalar::ratio(1, 6));
    }
    case ElementaryKind::case_five: {
      const Scalar& alpha = require(params.alpha, "alpha");
      const Scalar& a1 = require_nonzero(params.a1, "a1");
      const Scalar& a2 = require(params.a2, "a2");
      TruncatedSeries lin = TruncatedSeries::constant(-alpha, n_max);
      lin[1] = Scalar(1);
      s = mul(lin, exp_series(n_max));
      s[0] += alpha;
      s[1] += alpha + a1 - Scalar(1);
      if (n_max >= 2) s[2] += (alpha + a2 - Scalar(2)) / Scalar(2);
      return s;
    }
    case ElementaryKind::sq_arccos_shift:
      return sq_arccos_shift_series(n_max);
  }
  throw InvalidArgument("unknown elementary kind");
}

}  // namespace

TruncatedSeries elementary(ElementaryKind kind, int order, const Params& params) {
  if (order < 1 || order > TruncatedSeries::kMaxOrder) {
    throw InvalidArgument("elementary series order must lie in [1, 64]");
  }
  return build_elementary(kind, order, params);
}

}  // namespace gseries
