#include "bitsense/raic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bitsense/errors.hpp"
#include "bitsense/parallel.hpp"
#include "bitsense/thresholding.hpp"

namespace bitsense {
namespace {

void require_unit(std::span<const double> v, const char* name) {
  if (std::abs(norm2(v) - 1.0) > kUnitNormTolerance) {
    throw DomainError(std::string(name) + " must be a unit vector");
  }
}

}  // namespace

Vector correction_map(const MeasurementMatrix& a, std::span<const double> x, std::span<const double> y,
                      double eta) {
  const TernaryDiff r = ternary_diff(sign_measure(a, x), sign_measure(a, y));
  Vector weights(r.entries.size());
  const double scale = eta / static_cast<double>(a.rows());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = scale * r.entries[i];
  return a.multiply_transposed(weights);
}

Vector restricted_correction_map(const MeasurementMatrix& a, std::span<const double> x,
                                 std::span<const double> y, const IndexSet& extra, double eta) {
  const IndexSet keep = index_union(index_union(support(x), support(y)), extra);
  return threshold_set(correction_map(a, x, y, eta), keep);
}

OrthogonalDecomposition orthogonal_decompose(std::span<const double> h, std::span<const double> u,
                                             std::span<const double> v) {
  if (h.size() != u.size() || u.size() != v.size()) throw DimensionError("orthogonal_decompose: length mismatch");
  require_unit(u, "u");
  require_unit(v, "v");
  OrthogonalDecomposition out;
  out.e_minus.resize(u.size());
  out.e_plus.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out.e_minus[i] = u[i] - v[i];
    out.e_plus[i] = u[i] + v[i];
  }
  const double n_minus = norm2(out.e_minus);
  const double n_plus = norm2(out.e_plus);
  if (n_minus == 0.0 || n_plus == 0.0) throw DomainError("orthogonal_decompose: u = +-v has no split");
  for (double& e : out.e_minus) e /= n_minus;
  for (double& e : out.e_plus) e /= n_plus;
  out.c_minus = dot(out.e_minus, h);
  out.c_plus = dot(out.e_plus, h);
  out.g.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    out.g[i] = h[i] - out.c_minus * out.e_minus[i] - out.c_plus * out.e_plus[i];
  }
  return out;
}

double raic_residual(const MeasurementMatrix& a, std::span<const double> x, std::span<const double> y,
                     const IndexSet& extra, double eta) {
  const Vector h = restricted_correction_map(a, x, y, extra, eta);
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double d = (x[i] - y[i]) - h[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double raic_bound(double delta, double a1, double a2, double ds) {
  if (delta < 0.0 || a1 < 0.0 || a2 < 0.0 || ds < 0.0) throw DomainError("raic_bound arguments must be >= 0");
  return a1 * std::sqrt(delta * ds) + a2 * delta;
}

std::string_view regime_name(DistanceRegime r) { return r == DistanceRegime::kSmall ? "small" : "large"; }

RaicRecord evaluate_raic_pair(const MeasurementMatrix& a, const SparseUnitVector& x,
                              const SparseUnitVector& y, const IndexSet& extra, double delta,
                              const theory::UniversalConstants& constants, double eta) {
  RaicRecord rec;
  rec.ds = sphere_distance(x.values(), y.values());
  rec.regime = rec.ds < delta / constants.b ? DistanceRegime::kSmall : DistanceRegime::kLarge;
  rec.residual = raic_residual(a, x.values(), y.values(), extra, eta);
  rec.bound = raic_bound(delta, constants.c1, constants.c2, rec.ds);
  if (rec.bound > 0.0) {
    rec.ratio = rec.residual / rec.bound;
  } else {
    rec.ratio = rec.residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return rec;
}

RaicReport raic_certify(const MeasurementMatrix& a, const RaicCertifyConfig& config) {
  const std::size_t n = a.cols();
  if (config.num_pairs == 0) throw DomainError("raic_certify needs at least one pair");
  if (config.num_small_pairs > config.num_pairs) throw DomainError("more small pairs than pairs");
  if (config.k == 0 || config.k > n) throw DomainError("raic_certify needs 1 <= k <= n");
  if (config.max_extra > n) throw DomainError("|J| cap exceeds n");
  if (!(config.delta > 0.0)) throw DomainError("delta must be positive");

  const double tau = config.delta / config.constants.b;
  const std::size_t first_small = config.num_pairs - config.num_small_pairs;

  RaicReport report;
  report.delta = config.delta;
  report.tau = tau;
  report.samples = config.num_pairs;
  report.records.resize(config.num_pairs);

  parallel_for(config.num_pairs, config.threads, [&](std::size_t id) {
    const SeedSpec pair_seed = derive_seed(config.seed, id);
    const SparseUnitVector x = random_sparse_unit(n, config.k, derive_seed(pair_seed, 0));
    Vector y_values;
    if (id < first_small) {
      y_values = random_sparse_unit(n, config.k, derive_seed(pair_seed, 1)).values();
    } else {
      // Gaussian nudge of norm tau / 2 on supp(x); y stays k-sparse and lands within tau of x.
      RandomStream noise_stream(derive_seed(pair_seed, 1));
      const IndexSet supp = x.support();
      Vector noise(n, 0.0);
      double noise_norm = 0.0;
      while (noise_norm == 0.0) {
        for (std::size_t j : supp) noise[j] = noise_stream.next_normal();
        noise_norm = norm2(noise);
      }
      Vector shifted = x.values();
      for (std::size_t j : supp) shifted[j] += 0.5 * tau * noise[j] / noise_norm;
      y_values = *normalize(shifted);
    }
    const SparseUnitVector y(std::move(y_values), config.k);

    RandomStream extra_stream(derive_seed(pair_seed, 2));
    const std::size_t extra_size = static_cast<std::size_t>(extra_stream.next_below(config.max_extra + 1));
    const IndexSet extra = random_subset(n, extra_size, extra_stream);

    RaicRecord rec = evaluate_raic_pair(a, x, y, extra, config.delta, config.constants, config.eta);
    rec.pair_id = id;
    report.records[id] = rec;
  });

  for (const RaicRecord& rec : report.records) {
    report.worst_ratio = std::max(report.worst_ratio, rec.ratio);
    if (rec.ratio > 1.0) ++report.violations;
  }
  return report;
}

}  // namespace bitsense
