#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "gseries/params.hpp"
#include "gseries/series.hpp"

namespace gseries {

/// The nineteen expansion families: A1..A13 have an explicit g, C1..C6 only
/// an explicit inverse g^-1.
enum class Family { A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13, C1, C2, C3, C4, C5, C6 };

inline constexpr std::array<Family, 19> kAllFamilies = {
    Family::A1,  Family::A2,  Family::A3,  Family::A4,  Family::A5,  Family::A6,  Family::A7,
    Family::A8,  Family::A9,  Family::A10, Family::A11, Family::A12, Family::A13, Family::C1,
    Family::C2,  Family::C3,  Family::C4,  Family::C5,  Family::C6};

/// Families that come with a closed-form Bell polynomial value.
inline constexpr std::array<Family, 15> kClosedFormFamilies = {
    Family::A1, Family::A2, Family::A3, Family::A4,  Family::A5,  Family::A6,  Family::A7, Family::A8,
    Family::A9, Family::A10, Family::A11, Family::A12, Family::A13, Family::C1, Family::C2};

/// Stable lowercase identifier: "a1".."a13", "c1".."c6".
std::string_view family_id(Family f);
std::optional<Family> parse_family(std::string_view id);
std::string_view family_title(Family f);

bool has_closed_form(Family f);
bool has_explicit_g(Family f);

/// The series kind describing g^-1 of the family.
ElementaryKind inverse_kind(Family f);

/// Parameters used by the reference figures: alpha = 2 (A5), w = 1 (A6),
/// alpha = 4 and beta = 3 (A7), w = 1 (A10). The remaining parametric
/// families get w = 1 (C1) and alpha = 2, a1 = 1, a2 = 1 (C5).
Params default_params(Family f);

/// Fills unset parameters with defaults, drops those the family does not
/// use, and rejects values outside the family's schema.
Params normalize_params(Family f, const Params& p);

}  // namespace gseries
