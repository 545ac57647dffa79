#include "bitsense/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bitsense/errors.hpp"

namespace bitsense::theory {
namespace {

constexpr double kPi = std::numbers::pi;

void require_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(x));
  }
}

}  // namespace

UniversalConstants constants_with_b(double b) {
  if (!(b > 0.0)) throw DomainError("constant b must be positive");
  UniversalConstants k;
  k.b = b;
  k.c1 = std::sqrt(3.0 * kPi / b) * (1.0 + 16.0 * std::sqrt(2.0) / 3.0);
  k.c2 = (3.0 / b) * (1.0 + 4.0 * kPi / 3.0 + 8.0 * std::sqrt(3.0 * kPi) / 3.0 +
                      8.0 * std::sqrt(6.0 * kPi));
  return k;
}

UniversalConstants constants() { return constants_with_b(kCertifiedB); }

std::uint64_t sample_complexity(double epsilon, double rho, std::size_t k, std::size_t n) {
  require_unit_interval(epsilon, "epsilon");
  require_unit_interval(rho, "rho");
  if (k == 0 || k >= n) throw DomainError("sample_complexity needs 0 < k < n");
  const UniversalConstants u = constants();
  const double bc = u.b * u.c;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double m = (4.0 * bc * kd / epsilon) * std::log(std::numbers::e * nd / kd) +
                   (2.0 * bc * kd / epsilon) * std::log(12.0 * bc / epsilon) +
                   (bc / epsilon) * std::log(u.a / rho);
  return static_cast<std::uint64_t>(std::ceil(m));
}

double epsilon_recurrence(double epsilon, std::size_t t, const UniversalConstants& k) {
  require_unit_interval(epsilon, "epsilon");
  const double scale = epsilon / k.c;
  double e = 2.0;
  for (std::size_t i = 0; i < t; ++i) e = 4.0 * k.c1 * std::sqrt(scale * e) + 4.0 * k.c2 * scale;
  return e;
}

double epsilon_recurrence(double epsilon, std::size_t t) {
  return epsilon_recurrence(epsilon, t, constants());
}

RecurrenceTerms recurrence_terms(double epsilon, const UniversalConstants& k) {
  require_unit_interval(epsilon, "epsilon");
  RecurrenceTerms r;
  r.v = 16.0 * k.c1 * k.c1 * epsilon / k.c;
  r.w = k.c2 / (4.0 * k.c1 * k.c1);
  r.u = nested_sqrt_limit(r.w);
  return r;
}

double recurrence_fixed_point(double epsilon, const UniversalConstants& k) {
  const RecurrenceTerms r = recurrence_terms(epsilon, k);
  return r.u * r.u * r.v;
}

double recurrence_fixed_point(double epsilon) { return recurrence_fixed_point(epsilon, constants()); }

double epsilon_recurrence_excess(double epsilon, std::size_t t, const UniversalConstants& k) {
  const RecurrenceTerms r = recurrence_terms(epsilon, k);
  const double limit = r.u * r.u * r.v;
  const double root_limit = std::sqrt(r.v * limit);
  double excess = 2.0 - limit;
  for (std::size_t i = 0; i < t; ++i) {
    excess = r.v * excess / (std::sqrt(r.v * (limit + excess)) + root_limit);
  }
  return excess;
}

double epsilon_recurrence_excess(double epsilon, std::size_t t) {
  return epsilon_recurrence_excess(epsilon, t, constants());
}

double recurrence_limit_by_iteration(double epsilon, const UniversalConstants& k) {
  require_unit_interval(epsilon, "epsilon");
  const double scale = epsilon / k.c;
  double e = 2.0;
  for (int i = 0; i < 10000; ++i) {
    const double next = 4.0 * k.c1 * std::sqrt(scale * e) + 4.0 * k.c2 * scale;
    const double step = std::abs(next - e);
    e = next;
    if (step <= 1e-12) break;
  }
  return e;
}

double closed_form_bound(double epsilon, std::size_t t) {
  require_unit_interval(epsilon, "epsilon");
  // 2^-t underflows to 0 past t = 1074, where the bound is epsilon exactly.
  const double shrink = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(t, 2000)));
  return std::pow(2.0, shrink) * std::pow(epsilon, 1.0 - shrink);
}

bool contraction_condition_holds(double epsilon, const UniversalConstants& k) {
  const RecurrenceTerms r = recurrence_terms(epsilon, k);
  return r.u * std::sqrt(r.v) < std::sqrt(2.0);
}

double nested_sqrt(double w, double w0, std::size_t t) {
  if (!(w > 0.0) || !(w0 > 0.0)) throw DomainError("nested_sqrt needs w > 0 and w0 > 0");
  double f = w0;
  for (std::size_t i = 0; i < t; ++i) f = std::sqrt(w + f);
  return f;
}

double nested_sqrt_limit(double w) {
  if (!(w > 0.0)) throw DomainError("nested_sqrt_limit needs w > 0");
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * w));
}

}  // namespace bitsense::theory
