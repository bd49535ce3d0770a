#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gseries/family.hpp"
#include "gseries/params.hpp"
#include "gseries/scalar.hpp"

namespace gseries {

/// Lower-triangular table B[n][k] of partial Bell polynomial values,
/// 0 <= k <= n <= N.
using BellTriangle = std::vector<std::vector<Scalar>>;

/// B_{n,k}(x_1, x_2, ...) by the recurrence
///   B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) x_j B_{n-j,k-1},  B_{0,0} = 1.
/// args[j - 1] holds x_j; at least n - k + 1 values are required.
Scalar bell_generic(int n, int k, std::span<const Scalar> args);

/// Whole triangle up to order N from the same recurrence.
BellTriangle bell_generic_table(int order, std::span<const Scalar> args);

/// The family's closed-form value of B_{n,k}(d_1, d_2, ...) where d_j are
/// the derivatives of g^-1 at 0. Defined for the fifteen families listed in
/// kClosedFormFamilies and 1 <= k <= n <= 64.
Scalar bell_closed_form(Family f, const Params& params, int n, int k);

/// d_1..d_N of g^-1 at 0. A1..A13, C1 and C2 use their explicit argument
/// lists; C3..C6 are read off the Maclaurin series of g^-1.
std::vector<Scalar> derivative_sequence(Family f, const Params& params, int order);

struct GateResult {
  bool verified = false;
  int checked_up_to = 0;
  std::string diagnostic;
};

using ClosedForm = std::function<Scalar(int n, int k)>;

/// Compares a closed form with the recurrence for all 1 <= k <= n <= n_max.
/// Exact arguments must agree exactly; approximate ones within 1e-12
/// relative.
GateResult verify_against_generic(const ClosedForm& closed, std::span<const Scalar> args, int n_max);

/// Cached gate for one family + parameter set (n_max = 10). Families without
/// a closed form report verified = false.
GateResult closed_form_gate(Family f, const Params& params);

/// B[n][k] for 0 <= k <= n <= N, using the closed form where the gate passed
/// and the recurrence otherwise. Memoized per family + parameters.
BellTriangle bell_triangle(Family f, const Params& params, int order);

}  // namespace gseries
