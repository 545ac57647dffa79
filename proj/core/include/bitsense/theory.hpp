#pragma once

#include <cstddef>
#include <cstdint>

namespace bitsense::theory {

/// Smallest value of b for which the convergence analysis is certified.
inline constexpr double kCertifiedB = 379.1038;

struct UniversalConstants {
  double a = 16.0;
  double b = kCertifiedB;
  double c = 32.0;
  double c1 = 0.0;  ///< sqrt(3 pi / b) (1 + 16 sqrt(2) / 3)
  double c2 = 0.0;  ///< (3 / b) (1 + 4 pi / 3 + 8 sqrt(3 pi) / 3 + 8 sqrt(6 pi))
};

/// The universal constants with b = 379.1038.
UniversalConstants constants();
/// Same family with a different b; c1 and c2 are recomputed from it.
UniversalConstants constants_with_b(double b);

/// Measurements sufficient for uniform recovery at accuracy epsilon with
/// failure probability rho (ceiling of the bound, natural logarithms):
///
///   m >= (4bck/e) log(en/k) + (2bck/e) log(12bc/e) + (bc/e) log(a/rho)
///
/// Requires epsilon, rho in (0, 1) and 0 < k < n.
std::uint64_t sample_complexity(double epsilon, double rho, std::size_t k, std::size_t n);

/// e(0) = 2, e(t) = 4 c1 sqrt((epsilon / c) e(t-1)) + 4 c2 epsilon / c.
double epsilon_recurrence(double epsilon, std::size_t t);
double epsilon_recurrence(double epsilon, std::size_t t, const UniversalConstants& k);

/// e(t) - lim e, evaluated without cancellation.
///
/// Writing L for the limit, e(t) - L = v d / (sqrt(v (L + d)) + sqrt(v L))
/// with d = e(t-1) - L, so the excess keeps full relative precision long
/// after e(t) itself has rounded onto L in double precision.
double epsilon_recurrence_excess(double epsilon, std::size_t t);
double epsilon_recurrence_excess(double epsilon, std::size_t t, const UniversalConstants& k);

/// 2^(2^-t) epsilon^(1 - 2^-t).
double closed_form_bound(double epsilon, std::size_t t);

/// The terms v = 16 c1^2 epsilon / c, w = c2 / (4 c1^2), u = (1 + sqrt(1 + 4w)) / 2
/// that put the recurrence in the form e(t) = v w + sqrt(v e(t-1)).
struct RecurrenceTerms {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};
RecurrenceTerms recurrence_terms(double epsilon, const UniversalConstants& k);

/// Limit u^2 v of the recurrence.
double recurrence_fixed_point(double epsilon);
double recurrence_fixed_point(double epsilon, const UniversalConstants& k);

/// Iterates to convergence (|step| <= 1e-12, at most 1e4 steps) and returns
/// the last value. Independent of the closed-form limit.
double recurrence_limit_by_iteration(double epsilon, const UniversalConstants& k);

/// u sqrt(v) < sqrt(2): the condition under which the recurrence contracts
/// monotonically from e(0) = 2.
bool contraction_condition_holds(double epsilon, const UniversalConstants& k);

/// f(0) = w0, f(t) = sqrt(w + f(t-1)). Requires w, w0 > 0.
double nested_sqrt(double w, double w0, std::size_t t);
/// Limit (1 + sqrt(1 + 4w)) / 2 of nested_sqrt.
double nested_sqrt_limit(double w);

}  // namespace bitsense::theory
