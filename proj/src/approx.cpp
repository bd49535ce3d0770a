#include "gseries/approx.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"

#include "gseries/bell.hpp"
#include "gseries/combinatorics.hpp"
#include "gseries/errors.hpp"
#include "gseries/series.hpp"

namespace gseries {

namespace {

void check_order(int order) {
  if (order < 1 || order > TruncatedSeries::kMaxOrder) {
    throw InvalidArgument("number of terms must be in 1.." + std::to_string(TruncatedSeries::kMaxOrder));
  }
}

// Neumaier's variant of Kahan summation.
double compensated_sum(std::span<const double> terms) {
  double sum = 0.0, carry = 0.0;
  for (double t : terms) {
    double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      carry += (sum - s) + t;
    } else {
      carry += (t - s) + sum;
    }
    sum = s;
  }
  return sum + carry;
}

// Least-squares fit of y = b0 + b1 x + b2 log x; returns b1.
std::optional<double> fit_slope(std::span<const double> xs, std::span<const double> ys) {
  std::array<std::array<long double, 4>, 3> m{};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::array<long double, 3> row = {1.0L, xs[i], std::log(static_cast<long double>(xs[i]))};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
      m[r][3] += row[r] * ys[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-300L) return std::nullopt;
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      long double factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return static_cast<double>(m[1][3] / m[1][1]);
}

}  // namespace

ApproximationModel::ApproximationModel(Expansion expansion, FunctionSpec f, std::vector<Scalar> coeffs)
    : expansion_(std::move(expansion)), f_(std::move(f)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("model needs at least a_0");
  values_.reserve(coeffs_.size());
  for (const Scalar& a : coeffs_) values_.push_back(a.to_double());
}

bool ApproximationModel::is_exact() const {
  for (const Scalar& a : coeffs_) {
    if (!a.is_exact()) return false;
  }
  return true;
}

double ApproximationModel::evaluate(double x) const {
  const double u = expansion_.g(x - f_.x0());
  double acc = values_.back();
  for (std::size_t i = values_.size() - 1; i-- > 0;) acc = acc * u + values_[i];
  return acc;
}

double ApproximationModel::evaluate_naive(double x) const {
  const double u = expansion_.g(x - f_.x0());
  double sum = 0.0;
  for (std::size_t n = 0; n < values_.size(); ++n) sum += values_[n] * std::pow(u, static_cast<double>(n));
  return sum;
}

std::string ApproximationModel::to_json(int indent) const {
  using nlohmann::ordered_json;
  ordered_json params = ordered_json::object();
  const Params& p = expansion_.params();
  auto put = [&](const char* name, const std::optional<Scalar>& v) {
    if (v) params[name] = v->to_string();
  };
  put("alpha", p.alpha);
  put("beta", p.beta);
  put("w", p.w);
  put("a1", p.a1);
  put("a2", p.a2);

  ordered_json coeffs = ordered_json::array();
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const Scalar& a = coeffs_[n];
    mpq_class q = a.is_exact() ? a.rational() : Scalar::from_double_exact(a.to_double()).rational();
    coeffs.push_back(ordered_json{{"index", n},
                                  {"decimal", a.decimal()},
                                  {"num", q.get_num().get_str()},
                                  {"den", q.get_den().get_str()},
                                  {"exact", a.is_exact()}});
  }
  ordered_json doc{{"expansion", std::string(expansion_.id())},
                   {"params", params},
                   {"f", f_.name()},
                   {"x0", f_.x0()},
                   {"N", terms()},
                   {"coefficients", coeffs}};
  return doc.dump(indent);
}

ApproximationModel assemble(const Expansion& e, const FunctionSpec& f, int order) {
  check_order(order);
  const std::vector<Scalar> df = f.derivatives(order);
  const BellTriangle bell = bell_triangle(e.family(), e.params(), order);

  std::vector<Scalar> a;
  a.reserve(static_cast<std::size_t>(order) + 1);
  a.push_back(df[0]);
  std::vector<Scalar> terms;
  std::vector<double> floats;
  for (int n = 1; n <= order; ++n) {
    terms.clear();
    bool exact = true;
    for (int k = 1; k <= n; ++k) {
      if (df[k].is_zero() && df[k].is_exact()) continue;
      terms.push_back(df[k] * bell[n][k]);
      exact = exact && terms.back().is_exact();
    }
    const Scalar nf(factorial(n));
    if (exact) {
      Scalar sum(0);
      for (const Scalar& t : terms) sum += t;
      a.push_back(sum / nf);
    } else {
      floats.clear();
      for (const Scalar& t : terms) floats.push_back(t.to_double());
      a.push_back(Scalar::approximate(compensated_sum(floats) / nf.to_double()));
    }
  }
  return ApproximationModel(e, f, std::move(a));
}

ApproximationModel assemble_via_composition(const Expansion& e, const FunctionSpec& f, int order) {
  check_order(order);
  const std::vector<Scalar> df = f.derivatives(order);
  TruncatedSeries outer = TruncatedSeries::from_derivatives(df);
  TruncatedSeries inner = e.inverse_series(order);
  TruncatedSeries composed = compose(outer, inner);
  auto span = composed.coefficients();
  return ApproximationModel(e, f, std::vector<Scalar>(span.begin(), span.end()));
}

ApproximationModel taylor_baseline(const FunctionSpec& f, int order) {
  return assemble(Expansion::taylor(), f, order);
}

double estimate_radius(const ApproximationModel& m) {
  const int order = m.terms();
  if (order < 8) throw InvalidArgument("estimate_radius needs at least 8 terms");
  const auto& a = m.coefficients();
  std::vector<double> ns, logs;
  double root_max = 0.0;
  for (int n = (order + 1) / 2; n <= order; ++n) {
    if (a[n].is_zero()) continue;
    double mag = std::abs(a[n].to_double());
    if (mag == 0.0 || !std::isfinite(mag)) continue;
    ns.push_back(n);
    logs.push_back(std::log(mag));
    root_max = std::max(root_max, std::exp(logs.back() / n));
  }
  if (ns.empty()) return std::numeric_limits<double>::infinity();
  // |a_n| ~ C n^p R^-n: the fitted linear slope is -log R. Fall back on the
  // plain root test when too few terms survive for the fit.
  if (ns.size() >= 4) {
    if (auto slope = fit_slope(ns, logs)) return std::exp(-*slope);
  }
  return 1.0 / root_max;
}

std::vector<ErrorReport> error_report(const ApproximationModel& m, const std::function<double(double)>& f_exact,
                                      std::span<const double> xs) {
  std::vector<ErrorReport> out;
  out.reserve(xs.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double x : xs) {
    ErrorReport r;
    r.x = x;
    try {
      r.approx = m.evaluate(x);
      r.exact = f_exact(x);
      r.delta = std::abs(r.approx - r.exact);
    } catch (const DomainError& e) {
      r.approx = r.exact = r.delta = nan;
      r.error = e.what();
    } catch (const ConvergenceError& e) {
      r.approx = r.exact = r.delta = nan;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ErrorReport> error_report(const ApproximationModel& m, std::span<const double> xs) {
  const FunctionSpec& f = m.function();
  return error_report(m, [&f](double x) { return f.exact(x); }, xs);
}

}  // namespace gseries
