#include "bitsense/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "bitsense/errors.hpp"

namespace bitsense {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

IndexSet support(std::span<const double> v) {
  IndexSet out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) out.push_back(i);
  }
  return out;
}

std::size_t count_nonzero(std::span<const double> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

IndexSet index_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

MeasurementMatrix::MeasurementMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries,
                                     std::optional<SeedSpec> seed)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), seed_(seed) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("measurement matrix needs m >= 1 and n >= 1");
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("measurement matrix entry count " + std::to_string(entries_.size()) +
                         " != m*n = " + std::to_string(rows_ * cols_));
  }
}

MeasurementMatrix MeasurementMatrix::gaussian(std::size_t rows, std::size_t cols, const SeedSpec& seed) {
  return MeasurementMatrix(rows, cols, sample_standard_normal(seed, rows * cols), seed);
}

MeasurementMatrix MeasurementMatrix::identity(std::size_t n) {
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = 1.0;
  return MeasurementMatrix(n, n, std::move(entries));
}

Vector MeasurementMatrix::multiply(std::span<const double> x) const {
  require_same_length(x.size(), cols_, "A x");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = entries_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
    out[i] = acc;
  }
  return out;
}

Vector MeasurementMatrix::multiply_transposed(std::span<const double> r) const {
  require_same_length(r.size(), rows_, "A^T r");
  Vector out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double w = r[i];
    if (w == 0.0) continue;
    const double* row = entries_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += w * row[j];
  }
  return out;
}

SparseUnitVector::SparseUnitVector(Vector values, std::size_t k) : values_(std::move(values)), k_(k) {
  if (k_ == 0 || k_ > values_.size()) {
    throw DomainError("sparsity k=" + std::to_string(k_) + " outside [1, n=" +
                      std::to_string(values_.size()) + "]");
  }
  if (count_nonzero(values_) > k_) throw DomainError("vector has more than k nonzeros");
  if (std::abs(norm2(values_) - 1.0) > kUnitNormTolerance) throw DomainError("vector is not unit norm");
}

int sgn(double x) {
  if (!std::isfinite(x)) throw DomainError("sgn of a non-finite value");
  return x >= 0.0 ? 1 : -1;
}

SignPattern sign_measure(const MeasurementMatrix& a, std::span<const double> x) {
  const Vector ax = a.multiply(x);
  SignPattern out;
  out.bits.resize(ax.size());
  for (std::size_t i = 0; i < ax.size(); ++i) out.bits[i] = static_cast<std::int8_t>(sgn(ax[i]));
  return out;
}

TernaryDiff ternary_diff(const SignPattern& bx, const SignPattern& by) {
  require_same_length(bx.size(), by.size(), "ternary_diff");
  TernaryDiff out;
  out.entries.resize(bx.size());
  for (std::size_t i = 0; i < bx.size(); ++i) {
    const int d = (bx.bits[i] - by.bits[i]) / 2;
    out.entries[i] = static_cast<std::int8_t>(d);
    if (d != 0) ++out.support_count;
  }
  return out;
}

double sphere_distance(std::span<const double> u, std::span<const double> v) {
  require_same_length(u.size(), v.size(), "sphere_distance");
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 && nv == 0.0) return 0.0;
  if (nu == 0.0 || nv == 0.0) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] / nu - v[i] / nv;
    acc += d * d;
  }
  return std::sqrt(acc);
}

double angular_distance(std::span<const double> u, std::span<const double> v) {
  require_same_length(u.size(), v.size(), "angular_distance");
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) throw DomainError("angular distance of a zero vector");
  const double cosine = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
  return std::acos(cosine);
}

IndexSet random_subset(std::size_t n, std::size_t k, RandomStream& stream) {
  if (k > n) throw DomainError("subset size exceeds ground set");
  // Partial Fisher-Yates over the identity permutation.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  IndexSet out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.begin(), out.end());
  return out;
}

SparseUnitVector random_sparse_unit(std::size_t n, std::size_t k, const SeedSpec& seed) {
  if (k == 0 || k > n) {
    throw DomainError("random_sparse_unit needs 1 <= k <= n (k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  RandomStream stream(seed);
  const IndexSet supp = random_subset(n, k, stream);
  Vector values(n, 0.0);
  double norm = 0.0;
  // A zero-norm draw has probability zero; redraw rather than divide by it.
  while (norm == 0.0) {
    for (std::size_t j : supp) values[j] = stream.next_normal();
    norm = norm2(values);
  }
  for (double& x : values) x /= norm;
  return SparseUnitVector(std::move(values), k);
}

}  // namespace bitsense
