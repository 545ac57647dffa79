#include "bitsense/biht.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bitsense/errors.hpp"
#include "bitsense/thresholding.hpp"

namespace bitsense {
namespace {

struct StepResult {
  SparseUnitVector next;
  bool held;
};

StepResult step_impl(const MeasurementMatrix& a, const SignPattern& b, const SparseUnitVector& x_prev,
                     std::size_t k, double eta) {
  if (b.size() != a.rows()) throw DimensionError("measurement count does not match matrix rows");
  if (x_prev.size() != a.cols()) throw DimensionError("iterate length does not match matrix columns");
  if (k == 0 || k > a.cols()) throw DomainError("biht_step needs 1 <= k <= n");

  const SignPattern current = sign_measure(a, x_prev.values());
  Vector residual(b.size());
  bool agree = true;
  const double scale = eta / (2.0 * static_cast<double>(a.rows()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const int diff = b.bits[i] - current.bits[i];
    residual[i] = scale * diff;
    agree = agree && diff == 0;
  }
  // No correction and already k-sparse: T_k and the renormalization are the identity.
  if (agree && count_nonzero(x_prev.values()) <= k) return {SparseUnitVector(x_prev.values(), k), false};
  Vector proxy = x_prev.values();
  if (!agree) {
    const Vector correction = a.multiply_transposed(residual);
    for (std::size_t j = 0; j < proxy.size(); ++j) proxy[j] += correction[j];
  }
  std::optional<Vector> next = normalize(top_k(proxy, k));
  if (!next) return {x_prev, true};
  return {SparseUnitVector(std::move(*next), k), false};
}

}  // namespace

void validate(const BihtConfig& config) {
  if (config.k == 0) throw DomainError("BIHT sparsity k must be positive");
  if (!(config.eta > 0.0)) throw DomainError("BIHT step size eta must be positive");
  if (config.max_iters == 0) throw DomainError("BIHT max_iters must be >= 1");
  if (config.stop_tol && !(*config.stop_tol >= 0.0)) throw DomainError("stop_tol must be >= 0");
}

double Trajectory::lemma1_min_slack() const {
  double slack = std::numeric_limits<double>::infinity();
  for (const IterationRecord& r : records) {
    if (r.error_ds && r.lemma1_rhs) slack = std::min(slack, *r.lemma1_rhs - *r.error_ds);
  }
  return slack;
}

SparseUnitVector biht_step(const MeasurementMatrix& a, const SignPattern& b, const SparseUnitVector& x_prev,
                           std::size_t k, double eta) {
  return step_impl(a, b, x_prev, k, eta).next;
}

Trajectory run_biht(const MeasurementMatrix& a, const SignPattern& b, const BihtConfig& config,
                    const std::optional<SparseUnitVector>& truth) {
  validate(config);
  if (truth && truth->size() != a.cols()) throw DimensionError("true signal length does not match matrix");

  SparseUnitVector current = std::visit(
      [&](const auto& init) -> SparseUnitVector {
        using T = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<T, RandomSparseUnitInit>) {
          return random_sparse_unit(a.cols(), config.k, init.seed);
        } else {
          if (init.start.size() != a.cols()) throw DimensionError("initial iterate length does not match matrix");
          return init.start;
        }
      },
      config.init);

  const auto mismatch_of = [&](const SparseUnitVector& x) {
    return ternary_diff(b, sign_measure(a, x.values())).support_count;
  };

  Trajectory traj;
  traj.records.reserve(config.max_iters + 1);
  IterationRecord first{0, current, mismatch_of(current), std::nullopt, std::nullopt, false};
  if (truth) first.error_ds = sphere_distance(truth->values(), current.values());
  traj.records.push_back(std::move(first));

  for (std::size_t t = 1; t <= config.max_iters; ++t) {
    StepResult step = step_impl(a, b, current, config.k, config.eta);
    IterationRecord rec{t, step.next, mismatch_of(step.next), std::nullopt, std::nullopt, step.held};
    if (truth) {
      rec.error_ds = sphere_distance(truth->values(), step.next.values());
      rec.lemma1_rhs =
          4.0 * raic_residual(a, truth->values(), current.values(), step.next.support(), config.eta);
    }
    const double moved = sphere_distance(current.values(), step.next.values());
    current = std::move(step.next);
    traj.records.push_back(std::move(rec));
    if (config.stop_tol && moved <= *config.stop_tol) break;
  }
  return traj;
}

}  // namespace bitsense
