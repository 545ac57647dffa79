#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "bitsense/linalg.hpp"
#include "bitsense/rng.hpp"
#include "bitsense/theory.hpp"

namespace bitsense {

/// sqrt(2 pi), the step size under which the correction map is an
/// approximate inverse of the sign measurements.
inline const double kDefaultEta = std::sqrt(2.0 * std::numbers::pi);

/// h_A(x, y) = (eta / m) A^T (sgn(Ax) - sgn(Ay)) / 2.
Vector correction_map(const MeasurementMatrix& a, std::span<const double> x, std::span<const double> y,
                      double eta = kDefaultEta);

/// h_A restricted to supp(x) u supp(y) u J.
Vector restricted_correction_map(const MeasurementMatrix& a, std::span<const double> x,
                                 std::span<const double> y, const IndexSet& extra,
                                 double eta = kDefaultEta);

/// Splits h along e_minus = (u - v)/||u - v|| and e_plus = (u + v)/||u + v||,
/// which are orthonormal for unit u and v; g is the remainder.
struct OrthogonalDecomposition {
  double c_minus = 0.0;
  double c_plus = 0.0;
  Vector g;
  Vector e_minus;
  Vector e_plus;
};

/// Throws DomainError unless u and v are unit vectors with u != +-v.
OrthogonalDecomposition orthogonal_decompose(std::span<const double> h, std::span<const double> u,
                                             std::span<const double> v);

/// ||(x - y) - h_{A,J}(x, y)||_2.
double raic_residual(const MeasurementMatrix& a, std::span<const double> x, std::span<const double> y,
                     const IndexSet& extra, double eta = kDefaultEta);

/// a1 sqrt(delta dS) + a2 delta. All arguments must be non-negative.
double raic_bound(double delta, double a1, double a2, double ds);

enum class DistanceRegime { kLarge, kSmall };
std::string_view regime_name(DistanceRegime r);

struct RaicRecord {
  std::size_t pair_id = 0;
  double ds = 0.0;
  DistanceRegime regime = DistanceRegime::kLarge;
  double residual = 0.0;
  double bound = 0.0;
  /// residual / bound; 0 when both vanish, +inf when only the bound does.
  double ratio = 0.0;
};

struct RaicReport {
  double delta = 0.0;
  double tau = 0.0;
  std::size_t samples = 0;
  std::vector<RaicRecord> records;
  double worst_ratio = 0.0;
  std::size_t violations = 0;
};

struct RaicCertifyConfig {
  std::size_t k = 1;
  double delta = 0.01;
  std::size_t num_pairs = 1;
  /// How many of the num_pairs are forced into the small-distance regime.
  std::size_t num_small_pairs = 0;
  /// Upper bound on |J|; each pair draws |J| uniformly from [0, max_extra].
  std::size_t max_extra = 0;
  SeedSpec seed{};
  double eta = kDefaultEta;
  theory::UniversalConstants constants = theory::constants();
  std::size_t threads = 0;
};

/// Residual, bound and regime for a single pair.
RaicRecord evaluate_raic_pair(const MeasurementMatrix& a, const SparseUnitVector& x,
                              const SparseUnitVector& y, const IndexSet& extra, double delta,
                              const theory::UniversalConstants& constants, double eta = kDefaultEta);

/// Samples pairs of k-sparse unit vectors and checks each against the RAIC
/// bound with a1 = c1, a2 = c2. The first num_pairs - num_small_pairs pairs
/// are independent; the rest put y within tau = delta / b of x by a
/// perturbation on supp(x). Pair i uses derive_seed(seed, i).
RaicReport raic_certify(const MeasurementMatrix& a, const RaicCertifyConfig& config);

}  // namespace bitsense
