#include "gseries/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gseries/errors.hpp"
#include "gseries/scalar.hpp"

namespace gseries {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

double initial_guess(double x) {
  if (x < -0.25) {
    // Expansion about the branch point in p = sqrt(2(e x + 1)).
    double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x > std::numbers::e) {
    double l1 = std::log(x);
    double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  // Winitzki's global approximation.
  double l = std::log1p(x);
  return l * (1.0 - std::log1p(l) / (2.0 + l));
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  const double branch = -kInvE;
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * kInvE;
  if (x < branch - slack) {
    throw DomainError("lambert_w0: argument " + format_double(x) + " below -1/e");
  }
  if (x <= branch) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = initial_guess(x);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 <= 0.0) {
      w = -1.0 + 1e-8;
      continue;
    }
    // Halley step.
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0 || !std::isfinite(denom)) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w))) break;
  }
  return std::max(w, -1.0);
}

}  // namespace gseries
