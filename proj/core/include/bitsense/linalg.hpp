#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bitsense/rng.hpp"

namespace bitsense {

using Vector = std::vector<double>;
/// Sorted, duplicate-free, 0-based coordinate indices.
using IndexSet = std::vector<std::size_t>;

inline constexpr double kUnitNormTolerance = 1e-9;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
/// Coordinates with a nonzero entry.
IndexSet support(std::span<const double> v);
std::size_t count_nonzero(std::span<const double> v);
IndexSet index_union(const IndexSet& a, const IndexSet& b);

/// Dense m x n matrix, row-major. Rows are the measurement vectors.
class MeasurementMatrix {
 public:
  MeasurementMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
                    std::optional<SeedSpec> seed = std::nullopt);

  /// i.i.d. N(0, 1) entries, drawn row by row from `seed`.
  static MeasurementMatrix gaussian(std::size_t rows, std::size_t cols, const SeedSpec& seed);
  static MeasurementMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  const std::vector<double>& entries() const noexcept { return entries_; }
  const std::optional<SeedSpec>& seed() const noexcept { return seed_; }

  Vector multiply(std::span<const double> x) const;
  /// A^T r.
  Vector multiply_transposed(std::span<const double> r) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  std::optional<SeedSpec> seed_;
};

/// b = sgn(Ax), entries in {-1, +1}.
struct SignPattern {
  std::vector<std::int8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

/// r = (bx - by) / 2 with entries in {-1, 0, +1}; support_count = ||r||_0.
struct TernaryDiff {
  std::vector<std::int8_t> entries;
  std::size_t support_count = 0;
};

/// A vector with at most k nonzeros and unit Euclidean norm (within 1e-9).
class SparseUnitVector {
 public:
  /// Throws DomainError if the sparsity or norm invariant is violated.
  SparseUnitVector(Vector values, std::size_t k);

  const Vector& values() const noexcept { return values_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return values_.size(); }
  IndexSet support() const { return bitsense::support(values_); }

  friend bool operator==(const SparseUnitVector&, const SparseUnitVector&) = default;

 private:
  Vector values_;
  std::size_t k_;
};

/// +1 for x >= 0 (zero included), -1 otherwise. Throws DomainError on NaN/inf.
int sgn(double x);

SignPattern sign_measure(const MeasurementMatrix& a, std::span<const double> x);
TernaryDiff ternary_diff(const SignPattern& bx, const SignPattern& by);

/// ||u/||u|| - v/||v|| ||_2, with 0 when both vanish and 1 when exactly one does.
double sphere_distance(std::span<const double> u, std::span<const double> v);
/// arccos of the cosine similarity, clamped to [-1, 1] first.
double angular_distance(std::span<const double> u, std::span<const double> v);

/// Support uniform over k-subsets, N(0,1) values on it, then normalized.
SparseUnitVector random_sparse_unit(std::size_t n, std::size_t k, const SeedSpec& seed);
/// Uniformly random k-subset of {0..n-1}, sorted.
IndexSet random_subset(std::size_t n, std::size_t k, RandomStream& stream);

}  // namespace bitsense
