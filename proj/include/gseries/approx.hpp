#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gseries/expansion.hpp"
#include "gseries/function_spec.hpp"
#include "gseries/scalar.hpp"

namespace gseries {

/// A(x) = a_0 + a_1 u + ... + a_N u^N with u = g(x - x0).
///
/// Immutable after assembly; evaluate() and error_report() may run
/// concurrently on one model.
class ApproximationModel {
 public:
  ApproximationModel(Expansion expansion, FunctionSpec f, std::vector<Scalar> coeffs);

  const Expansion& expansion() const { return expansion_; }
  const FunctionSpec& function() const { return f_; }
  /// Highest power N.
  int terms() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  /// a_n rounded to double.
  const std::vector<double>& coefficients_double() const { return values_; }
  bool is_exact() const;

  /// Horner evaluation in u = g(x - x0). Throws DomainError outside the
  /// expansion's domain.
  double evaluate(double x) const;
  /// sum a_n u^n with explicit powers; the reference for Horner.
  double evaluate_naive(double x) const;

  /// {expansion, params, f, x0, N, coefficients: [{index, decimal, num, den,
  /// exact}]}. Approximate coefficients report the exact value of their
  /// double.
  std::string to_json(int indent = 2) const;

 private:
  Expansion expansion_;
  FunctionSpec f_;
  std::vector<Scalar> coeffs_;
  std::vector<double> values_;
};

/// a_0 = f(x0) and a_n = (1/n!) sum_{k=1}^n d_k^f B_{n,k}(d_1, d_2, ...) with
/// d_j the derivatives of g^-1 at 0. Exact when every input is rational;
/// otherwise each a_n is a compensated floating-point sum.
ApproximationModel assemble(const Expansion& e, const FunctionSpec& f, int order);

/// Same coefficients from compose(f series, g^-1 series).
ApproximationModel assemble_via_composition(const Expansion& e, const FunctionSpec& f, int order);

/// a_n = d_n^f / n!, i.e. assemble() with the A5 family at alpha = 1.
ApproximationModel taylor_baseline(const FunctionSpec& f, int order);

/// Radius of convergence of sum a_n y^n estimated from the upper half of
/// the coefficients (requires N >= 8). Infinity when those coefficients are
/// all zero.
double estimate_radius(const ApproximationModel& m);

struct ErrorReport {
  double x = 0.0;
  double approx = 0.0;
  double exact = 0.0;
  double delta = 0.0;
  /// Set when x could not be evaluated; the numeric fields are then NaN.
  std::optional<std::string> error;
};

/// Per-point comparison of the model with f_exact. Points outside the
/// domain are reported through ErrorReport::error rather than thrown.
std::vector<ErrorReport> error_report(const ApproximationModel& m, const std::function<double(double)>& f_exact,
                                      std::span<const double> xs);
/// Uses the built-in closed form of the model's function.
std::vector<ErrorReport> error_report(const ApproximationModel& m, std::span<const double> xs);

}  // namespace gseries
