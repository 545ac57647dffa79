#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "bitsense/errors.hpp"
#include "bitsense/linalg.hpp"

using namespace bitsense;

namespace {

Vector random_unit(std::size_t n, std::uint64_t seed) { return random_sparse_unit(n, n, SeedSpec{seed, 77}).values(); }

}  // namespace

TEST(Sgn, ZeroMapsToPlusOne) { EXPECT_EQ(sgn(0.0), 1); }
TEST(Sgn, NegativeZeroMapsToPlusOne) { EXPECT_EQ(sgn(-0.0), 1); }
TEST(Sgn, Negative) { EXPECT_EQ(sgn(-3.5), -1); }
TEST(Sgn, TinyPositive) { EXPECT_EQ(sgn(1e-300), 1); }
TEST(Sgn, RejectsNonFinite) {
  EXPECT_THROW(sgn(std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_THROW(sgn(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(SignMeasure, IdentityRows) {
  const SignPattern b = sign_measure(MeasurementMatrix::identity(3), Vector{1.0, -2.0, 0.0});
  EXPECT_EQ(b.bits, (std::vector<std::int8_t>{1, -1, 1}));
}

TEST(SignMeasure, DimensionMismatch) {
  EXPECT_THROW(sign_measure(MeasurementMatrix::identity(3), Vector{1.0, 2.0}), DimensionError);
}

TEST(SignMeasure, InvariantUnderPositiveScaling) {
  const auto a = MeasurementMatrix::gaussian(100, 20, SeedSpec{1, 0});
  for (std::uint64_t s = 0; s < 20; ++s) {
    Vector x = random_unit(20, s);
    Vector scaled = x;
    for (double& v : scaled) v *= 2.0;
    EXPECT_EQ(sign_measure(a, x), sign_measure(a, scaled));
  }
}

TEST(SignMeasure, NegationFlipsEveryRowAgainstDirectRecomputation) {
  const auto a = MeasurementMatrix::gaussian(100, 20, SeedSpec{2, 0});
  const Vector x = random_unit(20, 3);
  Vector neg = x;
  for (double& v : neg) v = -v;
  const SignPattern bx = sign_measure(a, x);
  const SignPattern bn = sign_measure(a, neg);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double ip = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) ip += a.row(i)[j] * x[j];
    ASSERT_NE(ip, 0.0);
    EXPECT_EQ(bx.bits[i], ip >= 0 ? 1 : -1);
    EXPECT_EQ(bn.bits[i], -bx.bits[i]);
  }
}

TEST(TernaryDiff, EqualPatternsGiveZero) {
  const SignPattern b{{1, -1, 1}};
  const TernaryDiff r = ternary_diff(b, b);
  EXPECT_EQ(r.support_count, 0u);
  for (auto e : r.entries) EXPECT_EQ(e, 0);
}

TEST(TernaryDiff, SingleDisagreement) {
  const TernaryDiff r = ternary_diff(SignPattern{{1, 1}}, SignPattern{{-1, 1}});
  EXPECT_EQ(r.entries, (std::vector<std::int8_t>{1, 0}));
  EXPECT_EQ(r.support_count, 1u);
}

TEST(TernaryDiff, SupportCountIsHammingDistance) {
  RandomStream stream(SeedSpec{11, 0});
  for (int trial = 0; trial < 50; ++trial) {
    SignPattern a, b;
    for (int i = 0; i < 64; ++i) {
      a.bits.push_back(stream.next_below(2) ? 1 : -1);
      b.bits.push_back(stream.next_below(2) ? 1 : -1);
    }
    std::size_t hamming = 0;
    for (int i = 0; i < 64; ++i) hamming += a.bits[i] != b.bits[i];
    const TernaryDiff r = ternary_diff(a, b);
    EXPECT_EQ(r.support_count, hamming);
    std::size_t recount = 0;
    for (auto e : r.entries) recount += e != 0;
    EXPECT_EQ(recount, r.support_count);
  }
}

TEST(TernaryDiff, LengthMismatch) {
  EXPECT_THROW(ternary_diff(SignPattern{{1}}, SignPattern{{1, 1}}), DimensionError);
}

TEST(SphereDistance, AntipodalIsTwo) {
  const Vector x = random_unit(10, 4);
  Vector neg = x;
  for (double& v : neg) v = -v;
  EXPECT_NEAR(sphere_distance(x, neg), 2.0, 1e-12);
}

TEST(SphereDistance, OrthonormalPair) {
  EXPECT_NEAR(sphere_distance(Vector{1, 0}, Vector{0, 1}), std::sqrt(2.0), 1e-15);
}

TEST(SphereDistance, ZeroCases) {
  EXPECT_EQ(sphere_distance(Vector{3, 4}, Vector{0, 0}), 1.0);
  EXPECT_EQ(sphere_distance(Vector{0, 0}, Vector{3, 4}), 1.0);
  EXPECT_EQ(sphere_distance(Vector{0, 0}, Vector{0, 0}), 0.0);
}

TEST(SphereDistance, SymmetricBoundedAndScaleFree) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Vector u = random_unit(8, 2 * s);
    Vector v = random_unit(8, 2 * s + 1);
    const double d = sphere_distance(u, v);
    EXPECT_EQ(d, sphere_distance(v, u));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
    EXPECT_NEAR(sphere_distance(u, u), 0.0, 1e-15);
    for (double& x : v) x *= 5.0;
    EXPECT_NEAR(sphere_distance(u, v), d, 1e-12);
  }
}

TEST(AngularDistance, Basics) {
  const Vector u{0.3, -0.4, 1.2};
  EXPECT_NEAR(angular_distance(u, u), 0.0, 1e-7);
  EXPECT_NEAR(angular_distance(Vector{1, 0}, Vector{0, 1}), std::numbers::pi / 2, 1e-15);
  EXPECT_THROW(angular_distance(Vector{0, 0}, Vector{0, 1}), DomainError);
}

TEST(AngularDistance, ParallelVectorsClampToZero) {
  const Vector u{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const double theta = angular_distance(u, u);
  EXPECT_FALSE(std::isnan(theta));
}

TEST(AngularDistance, RelatedToSphereDistance) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Vector u = random_unit(6, 1000 + 2 * s);
    const Vector v = random_unit(6, 1001 + 2 * s);
    const double ds = sphere_distance(u, v);
    EXPECT_NEAR(angular_distance(u, v), std::acos(1.0 - ds * ds / 2.0), 1e-10);
    EXPECT_NEAR(ds * ds, 2.0 * (1.0 - std::cos(angular_distance(u, v))), 1e-10);
  }
}

TEST(RandomSparseUnit, OneByOne) {
  const auto x = random_sparse_unit(1, 1, SeedSpec{5, 5});
  EXPECT_EQ(std::abs(x.values()[0]), 1.0);
}

TEST(RandomSparseUnit, ExactlyKNonzerosAndUnitNorm) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto x = random_sparse_unit(50, 7, SeedSpec{s, 1});
    EXPECT_EQ(count_nonzero(x.values()), 7u);
    EXPECT_NEAR(norm2(x.values()), 1.0, 1e-12);
  }
}

TEST(RandomSparseUnit, InvalidK) {
  EXPECT_THROW(random_sparse_unit(5, 0, SeedSpec{}), DomainError);
  EXPECT_THROW(random_sparse_unit(5, 6, SeedSpec{}), DomainError);
}

TEST(RandomSparseUnit, CoordinateMeansVanish) {
  // Each coordinate has mean 0 and variance 1/n by symmetry.
  const std::size_t n = 10, k = 3, draws = 10000;
  std::vector<double> sum(n, 0.0);
  for (std::uint64_t s = 0; s < draws; ++s) {
    const auto x = random_sparse_unit(n, k, SeedSpec{s, 42});
    for (std::size_t j = 0; j < n; ++j) sum[j] += x.values()[j];
  }
  const double se = std::sqrt(1.0 / n / draws);
  for (double s : sum) EXPECT_LE(std::abs(s / draws), 4.0 * se);
}

TEST(RandomSparseUnit, SupportIsUniform) {
  const std::size_t n = 6, k = 2, draws = 6000;
  std::vector<int> hits(n, 0);
  for (std::uint64_t s = 0; s < draws; ++s) {
    for (auto j : random_sparse_unit(n, k, SeedSpec{s, 9}).support()) ++hits[j];
  }
  const double p = static_cast<double>(k) / n;
  const double se = std::sqrt(draws * p * (1 - p));
  for (int h : hits) EXPECT_LE(std::abs(h - draws * p), 4 * se);
}

TEST(SparseUnitVector, RejectsViolations) {
  EXPECT_THROW(SparseUnitVector(Vector{0.6, 0.8}, 1), DomainError);
  EXPECT_THROW(SparseUnitVector(Vector{0.6, 0.7}, 2), DomainError);
  EXPECT_NO_THROW(SparseUnitVector(Vector{0.6, 0.8}, 2));
}

TEST(MeasurementMatrix, ShapeChecks) {
  EXPECT_THROW(MeasurementMatrix(0, 3, {}), DimensionError);
  EXPECT_THROW(MeasurementMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
  const auto a = MeasurementMatrix::gaussian(4, 3, SeedSpec{1, 2});
  EXPECT_EQ(a.entries().size(), 12u);
  EXPECT_EQ(*a.seed(), (SeedSpec{1, 2}));
}

TEST(MeasurementMatrix, TransposeAgreesWithInnerProducts) {
  const auto a = MeasurementMatrix::gaussian(7, 5, SeedSpec{4, 4});
  const Vector x = random_unit(5, 1);
  const Vector r{1, -1, 0, 0.5, 2, -3, 1};
  // <A x, r> = <x, A^T r>
  EXPECT_NEAR(dot(a.multiply(x), r), dot(x, a.multiply_transposed(r)), 1e-12);
}
