#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "bitsense/linalg.hpp"
#include "bitsense/raic.hpp"
#include "bitsense/rng.hpp"

namespace bitsense {

struct RandomSparseUnitInit {
  SeedSpec seed;
};

struct ProvidedInit {
  SparseUnitVector start;
};

using BihtInit = std::variant<RandomSparseUnitInit, ProvidedInit>;

struct BihtConfig {
  std::size_t k = 1;
  /// The contraction argument needs exactly sqrt(2 pi); other values are
  /// accepted for experimentation and typically slow or stall convergence.
  double eta = kDefaultEta;
  std::size_t max_iters = 1;
  BihtInit init = RandomSparseUnitInit{};
  /// Stop once d_S between consecutive iterates is <= stop_tol. Off by default.
  std::optional<double> stop_tol;
};

/// Throws DomainError on k == 0, eta <= 0, max_iters == 0 or a negative stop_tol.
void validate(const BihtConfig& config);

struct IterationRecord {
  std::size_t iter = 0;
  SparseUnitVector iterate;
  /// ||(sgn(Ax) - sgn(A x_t)) / 2||_0, with sgn(Ax) taken from the measurements.
  std::size_t mismatch = 0;
  /// d_S(x, x_t); present when the true signal is known.
  std::optional<double> error_ds;
  /// 4 ||(x - x_{t-1}) - h_{A, supp(x_t)}(x, x_{t-1})||_2; present for t >= 1 with a known signal.
  std::optional<double> lemma1_rhs;
  /// True when T_k of the pre-projection vector vanished and the previous iterate was kept.
  bool held = false;
};

struct Trajectory {
  std::vector<IterationRecord> records;

  const SparseUnitVector& final_iterate() const { return records.back().iterate; }
  /// Smallest lemma1_rhs - error_ds over all recorded iterations (+inf if none).
  double lemma1_min_slack() const;
};

/// One normalized BIHT update:
///
///   x~ = x_prev + (eta / 2m) A^T (b - sgn(A x_prev))
///   x  = T_k(x~) / ||T_k(x~)||_2
///
/// If T_k(x~) is exactly zero the previous iterate is returned unchanged.
SparseUnitVector biht_step(const MeasurementMatrix& a, const SignPattern& b, const SparseUnitVector& x_prev,
                           std::size_t k, double eta = kDefaultEta);

/// Runs max_iters updates (or until stop_tol) from the configured start.
/// Record 0 holds the initial iterate.
Trajectory run_biht(const MeasurementMatrix& a, const SignPattern& b, const BihtConfig& config,
                    const std::optional<SparseUnitVector>& truth = std::nullopt);

}  // namespace bitsense
