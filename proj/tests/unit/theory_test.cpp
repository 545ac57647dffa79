#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bitsense/errors.hpp"
#include "bitsense/theory.hpp"

using namespace bitsense;
using namespace bitsense::theory;

namespace {

std::vector<double> epsilon_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

}  // namespace

TEST(Constants, Values) {
  const auto k = constants();
  EXPECT_EQ(k.a, 16.0);
  EXPECT_EQ(k.b, 379.1038);
  EXPECT_EQ(k.c, 32.0);
  // 40-digit evaluations (mpmath) of the defining expressions at b = 379.1038.
  EXPECT_NEAR(k.c1, 1.346914647272731788811614203659799897051, 1e-12);
  EXPECT_NEAR(k.c2, 0.3806999356415457709092705450600467702179, 1e-12);
}

TEST(Constants, RecomputedFromB) {
  const auto k = constants_with_b(379.1038);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(k.c1, std::sqrt(3 * pi / k.b) * (1 + 16 * std::sqrt(2.0) / 3), 1e-12);
  EXPECT_NEAR(k.c2, 3 / k.b * (1 + 4 * pi / 3 + 8 * std::sqrt(3 * pi) / 3 + 8 * std::sqrt(6 * pi)), 1e-12);
}

TEST(SampleComplexity, SpotValue) {
  const double e = 0.1, rho = 0.1, k = 5, n = 1000;
  const double bc = 379.1038 * 32.0;
  const double direct = 4 * bc * k / e * std::log(std::numbers::e * n / k) + 2 * bc * k / e * std::log(12 * bc / e) +
                        bc / e * std::log(16.0 / rho);
  EXPECT_EQ(sample_complexity(e, rho, 5, 1000), static_cast<std::uint64_t>(std::ceil(direct)));
  // 40-digit reference: 33112672.567...
  EXPECT_EQ(sample_complexity(e, rho, 5, 1000), 33112673u);
}

TEST(SampleComplexity, Monotone) {
  EXPECT_GT(sample_complexity(0.05, 0.1, 5, 1000), sample_complexity(0.1, 0.1, 5, 1000));
  EXPECT_GT(sample_complexity(0.1, 0.1, 6, 1000), sample_complexity(0.1, 0.1, 5, 1000));
  EXPECT_GT(sample_complexity(0.1, 0.01, 5, 1000), sample_complexity(0.1, 0.1, 5, 1000));
}

TEST(SampleComplexity, Domain) {
  EXPECT_THROW(sample_complexity(0.0, 0.1, 5, 10), DomainError);
  EXPECT_THROW(sample_complexity(0.1, 1.0, 5, 10), DomainError);
  EXPECT_THROW(sample_complexity(0.1, 0.1, 10, 10), DomainError);
  EXPECT_THROW(sample_complexity(0.1, 0.1, 0, 10), DomainError);
}

TEST(EpsilonRecurrence, StartsAtTwo) {
  for (double e : epsilon_grid()) EXPECT_EQ(epsilon_recurrence(e, 0), 2.0);
}

TEST(EpsilonRecurrence, FirstStepByHand) {
  const auto k = constants();
  const double e = 0.3;
  EXPECT_NEAR(epsilon_recurrence(e, 1), 4 * k.c1 * std::sqrt(e / 32 * 2) + 4 * k.c2 * e / 32, 1e-15);
}

TEST(EpsilonRecurrence, StrictlyDecreasingAndDominated) {
  for (double e : epsilon_grid()) {
    for (std::size_t t = 0; t <= 60; ++t) {
      const double now = epsilon_recurrence(e, t);
      EXPECT_LE(now, closed_form_bound(e, t) + 1e-12) << e << " " << t;
      EXPECT_LE(epsilon_recurrence(e, t + 1), now);
      EXPECT_GT(epsilon_recurrence_excess(e, t), epsilon_recurrence_excess(e, t + 1)) << e << " " << t;
    }
  }
}

TEST(EpsilonRecurrence, ExcessTracksDirectValueWhileResolvable) {
  for (double e : {0.05, 0.5, 0.95}) {
    const double limit = recurrence_fixed_point(e);
    for (std::size_t t = 0; t <= 20; ++t) {
      EXPECT_NEAR(epsilon_recurrence(e, t) - limit, epsilon_recurrence_excess(e, t), 1e-14);
    }
  }
}

TEST(EpsilonRecurrence, StepsContract) {
  for (double e : epsilon_grid()) {
    for (std::size_t t = 0; t < 60; ++t) {
      const double step = epsilon_recurrence_excess(e, t) - epsilon_recurrence_excess(e, t + 1);
      const double next = epsilon_recurrence_excess(e, t + 1) - epsilon_recurrence_excess(e, t + 2);
      EXPECT_GT(step, next);
    }
  }
}

TEST(EpsilonRecurrence, Domain) { EXPECT_THROW(epsilon_recurrence(1.0, 3), DomainError); }

TEST(ClosedFormBound, Endpoints) {
  EXPECT_EQ(closed_form_bound(0.3, 0), 2.0);
  EXPECT_NEAR(closed_form_bound(0.3, 1), std::sqrt(2 * 0.3), 1e-15);
  EXPECT_NEAR(closed_form_bound(0.3, 5000), 0.3, 1e-15);
  EXPECT_NEAR(closed_form_bound(0.25, 20), 0.25 * std::pow(2 / 0.25, std::ldexp(1.0, -20)), 1e-15);
  EXPECT_NEAR(closed_form_bound(0.25, 20), 0.25, 1e-5 * 0.25);
  EXPECT_THROW(closed_form_bound(-0.1, 2), DomainError);
}

TEST(FixedPoint, BelowEpsilonAndLinear) {
  const double slope = recurrence_fixed_point(0.5) / 0.5;
  for (double e : epsilon_grid()) {
    EXPECT_LT(recurrence_fixed_point(e), e);
    EXPECT_NEAR(recurrence_fixed_point(e), slope * e, 1e-14);
  }
}

TEST(FixedPoint, AgreesWithIteration) {
  for (double e : epsilon_grid()) {
    EXPECT_NEAR(epsilon_recurrence(e, 200), recurrence_fixed_point(e), 1e-9);
    EXPECT_NEAR(recurrence_limit_by_iteration(e, constants()), recurrence_fixed_point(e), 1e-11);
  }
}

TEST(FixedPoint, UIndependentOfEpsilon) {
  const auto k = constants();
  EXPECT_EQ(recurrence_terms(0.1, k).u, recurrence_terms(0.9, k).u);
  EXPECT_NEAR(recurrence_terms(0.9, k).v, 9 * recurrence_terms(0.1, k).v, 1e-14);
}

TEST(ContractionCondition, HoldsAtCertifiedBFailsAtHundred) {
  const auto certified = constants();
  const auto loose = constants_with_b(100.0);
  bool any_failure = false;
  for (double e : epsilon_grid()) {
    EXPECT_TRUE(contraction_condition_holds(e, certified)) << e;
    any_failure = any_failure || !contraction_condition_holds(e, loose);
  }
  EXPECT_TRUE(any_failure);
}

TEST(NestedSqrt, ConstantAtLimit) {
  const double w = 0.7;
  const double u = nested_sqrt_limit(w);
  for (std::size_t t = 0; t < 20; ++t) EXPECT_NEAR(nested_sqrt(w, u, t), u, 1e-15);
}

TEST(NestedSqrt, KnownLimit) {
  EXPECT_EQ(nested_sqrt_limit(2.0), 2.0);
  EXPECT_NEAR(nested_sqrt(2.0, 3.0, 200), 2.0, 1e-12);
}

TEST(NestedSqrt, ConvergesMonotonicallyFromEitherSide) {
  for (double w : {0.01, 0.3, 1.0, 5.0, 40.0}) {
    const double u = nested_sqrt_limit(w);
    for (double w0 : {0.001, 0.5 * u, 2.0 * u, 100.0}) {
      EXPECT_NEAR(nested_sqrt(w, w0, 500), u, 1e-10);
      for (std::size_t t = 0; t < 15; ++t) {
        const double a = nested_sqrt(w, w0, t), b = nested_sqrt(w, w0, t + 1);
        if (w0 > u) {
          EXPECT_LE(b, a);
        } else {
          EXPECT_GE(b, a);
        }
      }
    }
  }
}

TEST(NestedSqrt, Domain) {
  EXPECT_THROW(nested_sqrt(0.0, 1.0, 2), DomainError);
  EXPECT_THROW(nested_sqrt(1.0, -1.0, 2), DomainError);
}
