#include "gseries/bell.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <string>

#include "gseries/combinatorics.hpp"
#include "gseries/errors.hpp"
#include "gseries/series.hpp"

namespace gseries {

namespace {

constexpr int kGateOrder = 10;

Scalar sgn_pow(long e) { return (e % 2 == 0) ? Scalar(1) : Scalar(-1); }
Scalar fact(long n) { return Scalar(factorial(n)); }
Scalar choose(long top, long bottom) { return Scalar(binomial(top, bottom)); }
Scalar ipow(long base, long e) { return Scalar(base).pow(e); }

// Approximate inputs are replaced by the rational equal to their double, so
// alternating closed forms and the recurrence run without cancellation; the
// caller rounds the exact result once and tags it approximate.
Scalar pin(const Scalar& s, bool& approximate) {
  if (s.is_exact()) return s;
  approximate = true;
  return Scalar::from_double_exact(s.to_double());
}

void pin(std::optional<Scalar>& s, bool& approximate) {
  if (s) s = pin(*s, approximate);
}

Scalar rounded(const Scalar& s) { return Scalar::approximate(s.to_double()); }

Scalar closed_a1(int n, int k) { return stirling2(n, k); }

Scalar closed_a2(int n, int k) { return sgn_pow(n - k) * stirling1(n, k); }

Scalar closed_a3(int n, int k) {
  Scalar sum(0);
  for (int l = 0; l <= k; ++l) sum += sgn_pow(l) * choose(k, l) * ipow(k - 2 * l, n);
  return sum / (ipow(2, k) * fact(k));
}

Scalar closed_a4(int n, int k) {
  // cos((n - k) pi / 2) is 0 for odd n - k and (-1)^((n-k)/2) otherwise.
  if ((n - k) % 2 != 0) return Scalar(0);
  Scalar cosine = sgn_pow((n - k) / 2);
  Scalar sum(0);
  for (int q = 0; q <= k; ++q) sum += sgn_pow(q) * choose(k, q) * ipow(2 * q - k, n);
  return sgn_pow(k) / (ipow(2, k) * fact(k)) * cosine * sum;
}

Scalar closed_a5(const Scalar& alpha, int n, int k) {
  Scalar sum(0);
  for (int l = 0; l <= k; ++l) {
    sum += sgn_pow(l) * choose(k, l) * falling_factorial(alpha * Scalar(l), n);
  }
  return sgn_pow(k) / fact(k) * sum;
}

Scalar closed_a6(const Scalar& w, int n, int k) {
  Scalar c = choose(k, n - k);
  if (c.is_zero()) return Scalar(0);
  return Scalar(1) / ipow(2, n - k) * fact(n) / fact(k) * c * w.pow(2 * k - n);
}

Scalar closed_a7(const Scalar& alpha, const Scalar& root, const Scalar& beta, int n, int k) {
  // alpha^(n - k/2) = alpha^n / sqrt(alpha)^k
  Scalar alpha_power = alpha.pow(n) / root.pow(k);
  return sgn_pow(n + k) * double_factorial(2 * (n - k) - 1) / alpha_power * (beta / Scalar(2)).pow(n) *
         choose(2 * n - k - 1, 2 * (n - k));
}

Scalar closed_a8(int n, int k) {
  Scalar sum(0);
  for (int l = 0; l <= k; ++l) sum += sgn_pow(k - l) * choose(k, l) * choose(n + 2 * l - 1, n);
  return fact(n) / fact(k) * sum;
}

Scalar closed_a9(int n, int k) {
  if ((n + k) % 2 != 0) return Scalar(0);
  return fact(n) / fact(k) * choose((n + k) / 2 - 1, k - 1);
}

Scalar closed_a10(const Scalar& w, int n, int k) {
  Scalar total(0);
  const Scalar wm1 = w - Scalar(1);
  for (int l = 0; l <= k; ++l) {
    Scalar inner(0);
    for (int q = 0; q <= n - k; ++q) {
      inner += sgn_pow(q) / ipow(k, q) * choose(n - k, q) * stirling2(l + q, l) / choose(l + q, l);
    }
    total += choose(k, l) * inner * wm1.pow(l);
  }
  return ipow(k, n - k) * choose(n, k) * total;
}

Scalar closed_a11(int n, int k) {
  Scalar sum(0);
  for (int m = 0; m <= k; ++m) {
    sum += sgn_pow(m) * choose(k, m) * stirling1(n + m, m) / choose(n + m, m);
  }
  return sgn_pow(n - k) / fact(k) * sum;
}

Scalar closed_a12(int n, int k) {
  Scalar sum(0);
  for (int l = 0; l <= k; ++l) sum += sgn_pow(k - l) * choose(n + k, k - l) * stirling2(n + l, l);
  return fact(n) / fact(n + k) * sum;
}

Scalar closed_a13(int n, int k) {
  if ((n - k) % 2 != 0) return Scalar(0);
  const Scalar base = Scalar::ratio(n - 2, 2);
  Scalar sum(0);
  for (int l = 0; l <= n - k; ++l) {
    sum += choose(k + l - 1, k - 1) * stirling1(n - 1, k + l - 1) * base.pow(l);
  }
  return sgn_pow((n - k) / 2) * ipow(2, n - k) * sum;
}

Scalar closed_c1(const Scalar& w, int n, int k) {
  const Scalar wm1 = w - Scalar(1);
  Scalar sum(0);
  for (int r = 0; r <= k; ++r) sum += choose(k, r) * ipow(k - r, n - k) * wm1.pow(r);
  return choose(n, k) * sum;
}

Scalar closed_c2(int n, int k) {
  Scalar sum(0);
  for (int r = 0; r <= std::min(n, k); ++r) {
    sum += fact(r) * choose(n, r) * choose(k, r) * ipow(-2, k - r) * stirling2(n - r, k);
  }
  return sum;
}

bool close_enough(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double();
  double y = b.to_double();
  double scale = std::max({std::abs(x), std::abs(y), 1e-300});
  return std::abs(x - y) <= 1e-12 * scale;
}

std::string cache_key(Family f, const Params& p) { return std::string(family_id(f)) + "|" + p.key(); }

}  // namespace

Scalar bell_generic(int n, int k, std::span<const Scalar> args) {
  if (n < 0 || k < 0) throw InvalidArgument("Bell indices must be non-negative");
  if (k > n) return Scalar(0);
  if (n == 0) return Scalar(1);
  if (k == 0) return Scalar(0);
  if (static_cast<int>(args.size()) < n - k + 1) {
    throw InvalidArgument("bell_generic: B_{" + std::to_string(n) + "," + std::to_string(k) + "} needs " +
                          std::to_string(n - k + 1) + " arguments");
  }
  // Column k depends on column k - 1 only through rows < n.
  std::vector<Scalar> prev(static_cast<std::size_t>(n) + 1, Scalar(0));
  prev[0] = Scalar(1);
  for (int col = 1; col <= k; ++col) {
    std::vector<Scalar> cur(static_cast<std::size_t>(n) + 1, Scalar(0));
    for (int row = col; row <= n - (k - col); ++row) {
      Scalar acc(0);
      for (int j = 1; j <= row - col + 1; ++j) {
        const Scalar& x = args[static_cast<std::size_t>(j - 1)];
        if (x.is_zero() || prev[static_cast<std::size_t>(row - j)].is_zero()) continue;
        acc += choose(row - 1, j - 1) * x * prev[static_cast<std::size_t>(row - j)];
      }
      cur[static_cast<std::size_t>(row)] = acc;
    }
    prev = std::move(cur);
  }
  return prev[static_cast<std::size_t>(n)];
}

BellTriangle bell_generic_table(int order, std::span<const Scalar> given) {
  if (order < 0) throw InvalidArgument("Bell table order must be non-negative");
  if (static_cast<int>(given.size()) < order) throw InvalidArgument("bell_generic_table: too few arguments");
  bool approximate = false;
  std::vector<Scalar> args;
  args.reserve(given.size());
  for (const Scalar& x : given) args.push_back(pin(x, approximate));
  BellTriangle b(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) b[n].assign(static_cast<std::size_t>(n) + 1, Scalar(0));
  b[0][0] = Scalar(1);
  for (int n = 1; n <= order; ++n) {
    for (int k = 1; k <= n; ++k) {
      Scalar acc(0);
      for (int j = 1; j <= n - k + 1; ++j) {
        const Scalar& x = args[static_cast<std::size_t>(j - 1)];
        const Scalar& below = b[n - j][k - 1];
        if (x.is_zero() || below.is_zero()) continue;
        acc += choose(n - 1, j - 1) * x * below;
      }
      b[n][k] = std::move(acc);
    }
  }
  if (approximate) {
    for (auto& row : b) {
      for (Scalar& v : row) v = rounded(v);
    }
  }
  return b;
}

namespace {

Scalar closed_value(Family f, const Params& p, const Scalar& root, int n, int k) {
  switch (f) {
    case Family::A1: return closed_a1(n, k);
    case Family::A2: return closed_a2(n, k);
    case Family::A3: return closed_a3(n, k);
    case Family::A4: return closed_a4(n, k);
    case Family::A5: return closed_a5(*p.alpha, n, k);
    case Family::A6: return closed_a6(*p.w, n, k);
    case Family::A7: return closed_a7(*p.alpha, root, *p.beta, n, k);
    case Family::A8: return closed_a8(n, k);
    case Family::A9: return closed_a9(n, k);
    case Family::A10: return closed_a10(*p.w, n, k);
    case Family::A11: return closed_a11(n, k);
    case Family::A12: return closed_a12(n, k);
    case Family::A13: return closed_a13(n, k);
    case Family::C1: return closed_c1(*p.w, n, k);
    case Family::C2: return closed_c2(n, k);
    default: break;
  }
  throw InvalidArgument("unreachable family");
}

}  // namespace

Scalar bell_closed_form(Family f, const Params& given, int n, int k) {
  if (!has_closed_form(f)) {
    throw InvalidArgument(std::string(family_id(f)) + " has no closed-form Bell value");
  }
  if (n < 1 || n > 64 || k < 1 || k > n) throw InvalidArgument("bell_closed_form: need 1 <= k <= n <= 64");
  Params p = normalize_params(f, given);
  bool approximate = false;
  pin(p.alpha, approximate);
  pin(p.beta, approximate);
  pin(p.w, approximate);
  Scalar root;
  if (f == Family::A7) root = pin(sqrt(*p.alpha), approximate);
  Scalar value = closed_value(f, p, root, n, k);
  return approximate ? rounded(value) : value;
}

std::vector<Scalar> derivative_sequence(Family f, const Params& given, int order) {
  if (order < 1 || order > 64) throw InvalidArgument("derivative_sequence: order must lie in [1, 64]");
  const Params p = normalize_params(f, given);
  std::vector<Scalar> d;
  d.reserve(static_cast<std::size_t>(order));
  for (int j = 1; j <= order; ++j) {
    switch (f) {
      case Family::A1: d.emplace_back(1); break;
      case Family::A2: d.push_back(fact(j - 1)); break;
      case Family::A3: d.emplace_back(j % 2); break;
      case Family::A4: d.push_back(j % 2 == 0 ? Scalar(0) : sgn_pow((j - 1) / 2)); break;
      case Family::A5: d.push_back(falling_factorial(*p.alpha, j)); break;
      case Family::A6: d.push_back(j == 1 ? *p.w : Scalar(j == 2 ? 1 : 0)); break;
      case Family::A7: {
        // alpha^(1/2 - j) beta^j prod_{k=1}^{j} (k + 1/2 - j)
        Scalar prod(1);
        for (int k = 1; k <= j; ++k) prod *= Scalar::ratio(2 * (k - j) + 1, 2);
        d.push_back(sqrt(*p.alpha) / p.alpha->pow(j) * p.beta->pow(j) * prod);
        break;
      }
      case Family::A8: d.push_back(fact(j + 1)); break;
      case Family::A9: d.push_back(j % 2 == 1 ? fact(j) : Scalar(0)); break;
      case Family::A10: d.push_back(*p.w + Scalar(j - 1)); break;
      case Family::A11: d.push_back(fact(j) / Scalar(j + 1)); break;
      case Family::A12: d.push_back(Scalar::ratio(1, j + 1)); break;
      case Family::A13: d.push_back(j % 2 == 1 ? double_factorial(j - 2).pow(2) : Scalar(0)); break;
      case Family::C1: d.push_back(j == 1 ? *p.w : Scalar(j)); break;
      case Family::C2: d.push_back(j == 1 ? Scalar(-2) : Scalar(j - 2)); break;
      default: {
        std::vector<Scalar> all = elementary(inverse_kind(f), order, p).derivatives();
        return std::vector<Scalar>(all.begin() + 1, all.end());
      }
    }
  }
  return d;
}

GateResult verify_against_generic(const ClosedForm& closed, std::span<const Scalar> args, int n_max) {
  GateResult result;
  BellTriangle generic = bell_generic_table(n_max, args);
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      Scalar value = closed(n, k);
      if (!close_enough(value, generic[n][k])) {
        result.verified = false;
        result.checked_up_to = n - 1;
        result.diagnostic = "closed form B_{" + std::to_string(n) + "," + std::to_string(k) +
                            "} = " + value.to_string() + " but the recurrence gives " +
                            generic[n][k].to_string();
        return result;
      }
    }
  }
  result.verified = true;
  result.checked_up_to = n_max;
  return result;
}

GateResult closed_form_gate(Family f, const Params& given) {
  if (!has_closed_form(f)) return GateResult{false, 0, "no closed form"};
  const Params p = normalize_params(f, given);
  static std::mutex mutex;
  static std::map<std::string, GateResult> cache;
  const std::string key = cache_key(f, p);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<Scalar> args = derivative_sequence(f, p, kGateOrder);
  GateResult r = verify_against_generic([&](int n, int k) { return bell_closed_form(f, p, n, k); }, args,
                                        kGateOrder);
  if (!r.verified) {
    std::cerr << "gseries: closed-form Bell values of " << family_id(f) << " (" << p.key()
              << ") rejected, using the recurrence: " << r.diagnostic << '\n';
  }
  std::lock_guard lock(mutex);
  cache.emplace(key, r);
  return r;
}

BellTriangle bell_triangle(Family f, const Params& given, int order) {
  if (order < 0 || order > 64) throw InvalidArgument("bell_triangle: order must lie in [0, 64]");
  const Params p = normalize_params(f, given);
  static std::mutex mutex;
  static std::map<std::string, BellTriangle> cache;
  const std::string key = cache_key(f, p);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end() && static_cast<int>(it->second.size()) > order) {
      return BellTriangle(it->second.begin(), it->second.begin() + order + 1);
    }
  }

  BellTriangle table;
  if (order == 0) {
    table = {{Scalar(1)}};
  } else if (closed_form_gate(f, p).verified) {
    table.resize(static_cast<std::size_t>(order) + 1);
    table[0] = {Scalar(1)};
    for (int n = 1; n <= order; ++n) {
      table[n].assign(static_cast<std::size_t>(n) + 1, Scalar(0));
      for (int k = 1; k <= n; ++k) table[n][k] = bell_closed_form(f, p, n, k);
    }
  } else {
    table = bell_generic_table(order, derivative_sequence(f, p, order));
  }

  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (slot.size() < table.size()) slot = table;
  return table;
}

}  // namespace gseries
