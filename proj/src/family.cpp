#include "gseries/family.hpp"

#include <string>

#include "gseries/errors.hpp"

namespace gseries {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view id;
  std::string_view title;
  ElementaryKind inverse;
};

constexpr std::array<FamilyInfo, 19> kInfo = {{
    {Family::A1, "a1", "logarithm-based", ElementaryKind::exp_m1},
    {Family::A2, "a2", "exponential-based", ElementaryKind::neg_ln_1m},
    {Family::A3, "a3", "inverse hyperbolic sine", ElementaryKind::sinh},
    {Family::A4, "a4", "arcus sine", ElementaryKind::sin},
    {Family::A5, "a5", "powers of the alpha-th root of x+1 minus one", ElementaryKind::pow_alpha_m1},
    {Family::A6, "a6", "square-root-based", ElementaryKind::half_sq_plus_wx},
    {Family::A7, "a7", "polynomial", ElementaryKind::sqrt_shift},
    {Family::A8, "a8", "square root in the denominator", ElementaryKind::inv_sq_m1},
    {Family::A9, "a9", "fraction with square root", ElementaryKind::odd_geom},
    {Family::A10, "a10", "Lambert W", ElementaryKind::lambert_pair},
    {Family::A11, "a11", "second Lambert W", ElementaryKind::log_ratio},
    {Family::A12, "a12", "third Lambert W", ElementaryKind::expm1_ratio},
    {Family::A13, "a13", "powers of sine", ElementaryKind::arcsin},
    {Family::C1, "c1", "implicit: (w - 1 + e^u) u", ElementaryKind::case_one},
    {Family::C2, "c2", "implicit: e^u (u - 2) - u + 2", ElementaryKind::case_two},
    {Family::C3, "c3", "implicit: (2e^u - u^2 - 2u - 2)/(2u^2)", ElementaryKind::case_three},
    {Family::C4, "c4", "implicit: (6u e^u - 12e^u - u^3 + 6u + 12)/(6u^3)", ElementaryKind::case_four},
    {Family::C5, "c5", "implicit: alpha + (alpha + a1 - 1)u + (alpha + a2 - 2)u^2/2 + (u - alpha)e^u",
     ElementaryKind::case_five},
    {Family::C6, "c6", "implicit: -arccos(u + 1)^2/(2u) - 1", ElementaryKind::sq_arccos_shift},
}};

const FamilyInfo& info(Family f) { return kInfo[static_cast<std::size_t>(f)]; }

void require_nonzero(const std::optional<Scalar>& v, Family f, const char* name) {
  if (v->is_zero()) {
    throw InvalidArgument(std::string(family_id(f)) + ": parameter " + name + " must be nonzero");
  }
}

}  // namespace

std::string_view family_id(Family f) { return info(f).id; }

std::optional<Family> parse_family(std::string_view id) {
  for (const auto& i : kInfo) {
    if (i.id == id) return i.family;
  }
  if (id.size() >= 2 && (id[0] == 'A' || id[0] == 'C')) {
    std::string lower(id);
    lower[0] = static_cast<char>(lower[0] - 'A' + 'a');
    return parse_family(lower);
  }
  return std::nullopt;
}

std::string_view family_title(Family f) { return info(f).title; }

bool has_closed_form(Family f) {
  for (Family c : kClosedFormFamilies) {
    if (c == f) return true;
  }
  return false;
}

bool has_explicit_g(Family f) { return static_cast<int>(f) <= static_cast<int>(Family::A13); }

ElementaryKind inverse_kind(Family f) { return info(f).inverse; }

Params default_params(Family f) {
  Params p;
  switch (f) {
    case Family::A5:
      p.alpha = Scalar(2);
      break;
    case Family::A6:
    case Family::A10:
    case Family::C1:
      p.w = Scalar(1);
      break;
    case Family::A7:
      p.alpha = Scalar(4);
      p.beta = Scalar(3);
      break;
    case Family::C5:
      p.alpha = Scalar(2);
      p.a1 = Scalar(1);
      p.a2 = Scalar(1);
      break;
    default:
      break;
  }
  return p;
}

Params normalize_params(Family f, const Params& given) {
  const Params defaults = default_params(f);
  Params p;
  auto pick = [](const std::optional<Scalar>& def, const std::optional<Scalar>& in) {
    return def ? (in ? in : def) : std::optional<Scalar>{};
  };
  p.alpha = pick(defaults.alpha, given.alpha);
  p.beta = pick(defaults.beta, given.beta);
  p.w = pick(defaults.w, given.w);
  p.a1 = pick(defaults.a1, given.a1);
  p.a2 = pick(defaults.a2, given.a2);

  switch (f) {
    case Family::A5:
      require_nonzero(p.alpha, f, "alpha");
      break;
    case Family::A6:
    case Family::A10:
    case Family::C1:
      require_nonzero(p.w, f, "w");
      break;
    case Family::A7:
      require_nonzero(p.beta, f, "beta");
      if (p.alpha->sign() <= 0) {
        throw InvalidArgument("a7: parameter alpha must be positive (sqrt(alpha) enters g)");
      }
      break;
    case Family::C5:
      require_nonzero(p.a1, f, "a1");
      break;
    default:
      break;
  }
  return p;
}

}  // namespace gseries
