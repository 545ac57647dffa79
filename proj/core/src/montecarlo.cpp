#include "bitsense/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bitsense/errors.hpp"
#include "bitsense/parallel.hpp"
#include "bitsense/theory.hpp"
#include "bitsense/thresholding.hpp"

namespace bitsense::montecarlo {
namespace {

constexpr double kPi = std::numbers::pi;
// Draws per independently seeded block; fixed so results do not depend on thread count.
constexpr std::size_t kBlockSize = 8192;

void require_nonzero(std::span<const double> v, const char* name) {
  if (norm2(v) == 0.0) throw DomainError(std::string(name) + " must be nonzero");
}

SampleMean summarize(std::span<const double> values) {
  SampleMean out;
  out.trials = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double x : values) sum += x;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double x : values) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

Vector unit_pair_partner(std::size_t n, double theta) {
  Vector v(n, 0.0);
  v[0] = std::cos(theta);
  v[1] = std::sin(theta);
  return v;
}

Vector basis(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

double SampleMean::standard_error() const {
  return trials == 0 ? 0.0 : sd / std::sqrt(static_cast<double>(trials));
}

ValidatorResult mean_check(std::string name, double estimate, double theory, double se, double max_abs_z) {
  ValidatorResult r{std::move(name), estimate, theory, se, 0.0, false};
  if (se > 0.0) {
    r.z = (estimate - theory) / se;
    r.pass = std::abs(r.z) <= max_abs_z;
  } else {
    r.z = estimate == theory ? 0.0 : std::copysign(INFINITY, estimate - theory);
    r.pass = estimate == theory;
  }
  return r;
}

double mismatch_probability(std::span<const double> u, std::span<const double> v, std::size_t draws,
                            const SeedSpec& seed, double sign_offset, std::size_t threads) {
  if (u.size() != v.size()) throw DimensionError("mismatch_probability: length mismatch");
  require_nonzero(u, "u");
  require_nonzero(v, "v");
  if (draws == 0) throw DomainError("mismatch_probability needs draws >= 1");

  const std::size_t n = u.size();
  const std::size_t blocks = (draws + kBlockSize - 1) / kBlockSize;
  std::vector<std::size_t> counts(blocks, 0);
  const auto shifted_sign = [&](double x) { return sgn(x - sign_offset); };
  parallel_for(blocks, threads, [&](std::size_t block) {
    RandomStream stream(derive_seed(seed, block));
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(draws, begin + kBlockSize);
    Vector z(n);
    std::size_t count = 0;
    for (std::size_t d = begin; d < end; ++d) {
      for (double& zi : z) zi = stream.next_normal();
      if (shifted_sign(dot(u, z)) != shifted_sign(dot(v, z))) ++count;
    }
    counts[block] = count;
  });
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return static_cast<double>(total) / static_cast<double>(draws);
}

SampleMean band_count_mean(std::span<const double> u, double beta, std::size_t m, std::size_t trials,
                           const SeedSpec& seed, std::size_t threads) {
  require_nonzero(u, "u");
  if (!(beta >= 0.0 && beta <= kPi / 2)) throw DomainError("band half-width beta must lie in [0, pi/2]");
  if (m == 0 || trials == 0) throw DomainError("band_count_mean needs m >= 1 and trials >= 1");

  const std::size_t n = u.size();
  const double un = norm2(u);
  Vector e_u(u.begin(), u.end());
  for (double& x : e_u) x /= un;
  // Second axis of the plane: the basis vector least aligned with u, made orthogonal to it.
  Vector e_perp(n, 0.0);
  if (n > 1) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(e_u[i]) < std::abs(e_u[j])) j = i;
    }
    e_perp[j] = 1.0;
    const double c = e_u[j];
    for (std::size_t i = 0; i < n; ++i) e_perp[i] -= c * e_u[i];
    const double pn = norm2(e_perp);
    for (double& x : e_perp) x /= pn;
  }
  const double lo = kPi / 2 - beta;
  const double hi = kPi / 2 + beta;
  std::vector<double> counts(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t trial) {
    const MeasurementMatrix a = MeasurementMatrix::gaussian(m, n, derive_seed(seed, trial));
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto row = a.row(i);
      const double x = dot(e_u, row);
      const double y = std::abs(dot(e_perp, row));
      if (x == 0.0 && y == 0.0) continue;
      const double theta = std::atan2(y, x);
      if (theta >= lo && theta <= hi) ++count;
    }
    counts[trial] = static_cast<double>(count);
  });
  return summarize(counts);
}

ProjectionMeans projection_expectation(std::span<const double> u, std::span<const double> v, std::size_t m,
                                       std::size_t trials, const SeedSpec& seed, double eta,
                                       std::size_t threads) {
  if (u.size() != v.size()) throw DimensionError("projection_expectation: length mismatch");
  if (m == 0 || trials == 0) throw DomainError("projection_expectation needs m >= 1 and trials >= 1");
  // Validates the pair once (unit, not +-each other) before spending any draws.
  const OrthogonalDecomposition probe = orthogonal_decompose(Vector(u.size(), 0.0), u, v);

  std::vector<double> minus(trials), plus(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    const MeasurementMatrix a = MeasurementMatrix::gaussian(m, u.size(), derive_seed(seed, trial));
    const Vector h = correction_map(a, u, v, eta);
    minus[trial] = dot(probe.e_minus, h);
    plus[trial] = dot(probe.e_plus, h);
  });
  return {summarize(minus), summarize(plus)};
}

TailReport tail_frequency_check(std::span<const double> u, std::span<const double> v, std::size_t k,
                                const IndexSet& extra, std::size_t m, std::size_t trials, double t_param,
                                const SeedSpec& seed, double eta, std::size_t threads) {
  if (!(t_param > 0.0)) throw DomainError("tail check needs t > 0");
  if (m == 0 || trials == 0) throw DomainError("tail check needs m >= 1 and trials >= 1");
  if (k == 0 || count_nonzero(u) > k || count_nonzero(v) > k) throw DomainError("u and v must be k-sparse");
  if (extra.size() > 2 * k) throw DomainError("tail check needs |J| <= 2k");
  const OrthogonalDecomposition probe = orthogonal_decompose(Vector(u.size(), 0.0), u, v);
  const double ds = sphere_distance(u, v);
  const double theta = angular_distance(u, v);
  const double md = static_cast<double>(m);

  struct Draw {
    std::size_t l = 0;
    bool exceed[3] = {false, false, false};
    double bound[3] = {0.0, 0.0, 0.0};
  };
  std::vector<Draw> draws(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    const MeasurementMatrix a = MeasurementMatrix::gaussian(m, u.size(), derive_seed(seed, trial));
    Draw& d = draws[trial];
    d.l = ternary_diff(sign_measure(a, u), sign_measure(a, v)).support_count;
    if (d.l == 0) return;
    Vector h = restricted_correction_map(a, u, v, extra, eta);
    for (double& x : h) x /= eta;
    const OrthogonalDecomposition parts = orthogonal_decompose(h, u, v);
    const double l = static_cast<double>(d.l);
    const double width = l * t_param / md;
    d.exceed[0] = std::abs(parts.c_minus - std::sqrt(kPi / 2) * (l / md) * ds / theta) >= width;
    d.exceed[1] = std::abs(parts.c_plus) >= width;
    d.exceed[2] = norm2(parts.g) >= 2.0 * std::sqrt(2.0 * static_cast<double>(k) * l) / md + width;
    d.bound[0] = std::min(1.0, 2.0 * std::exp(-0.5 * l * t_param * t_param));
    d.bound[1] = d.bound[0];
    d.bound[2] = std::min(1.0, 2.0 * std::exp(-0.125 * l * t_param * t_param));
  });

  TailReport report;
  static constexpr const char* kNames[3] = {"tail_u_minus_v", "tail_u_plus_v", "tail_g"};
  for (int s = 0; s < 3; ++s) {
    TailStatistic stat;
    stat.name = kNames[s];
    double bound_sum = 0.0;
    for (const Draw& d : draws) {
      if (d.l == 0) continue;
      ++stat.counted;
      if (d.exceed[s]) ++stat.exceedances;
      bound_sum += d.bound[s];
    }
    if (stat.counted > 0) {
      const double count = static_cast<double>(stat.counted);
      stat.frequency = static_cast<double>(stat.exceedances) / count;
      stat.mean_bound = bound_sum / count;
      stat.se = std::sqrt(stat.mean_bound * (1.0 - stat.mean_bound) / count);
    }
    stat.pass = stat.frequency <= stat.mean_bound + 3.0 * stat.se;
    report.stats.push_back(stat);
  }
  for (const Draw& d : draws) {
    if (d.l == 0) ++report.skipped;
  }
  return report;
}

TrialSeeds trial_seeds(const SeedSpec& base, std::size_t trial) {
  const SeedSpec t = derive_seed(base, trial);
  return {derive_seed(t, 0), derive_seed(t, 1), derive_seed(t, 2)};
}

Trajectory run_trial(const ExperimentSpec& spec, std::size_t trial) {
  const TrialSeeds seeds = trial_seeds(spec.seed, trial);
  const SparseUnitVector truth = random_sparse_unit(spec.n, spec.k, seeds.signal);
  const MeasurementMatrix a = MeasurementMatrix::gaussian(spec.m, spec.n, seeds.matrix);
  const SignPattern b = sign_measure(a, truth.values());

  BihtConfig config;
  config.k = spec.k;
  config.eta = spec.eta;
  config.max_iters = spec.iters;
  config.init = RandomSparseUnitInit{seeds.init};
  Trajectory traj = run_biht(a, b, config, truth);

  for (const IterationRecord& r : traj.records) {
    if (r.error_ds && r.lemma1_rhs && *r.error_ds > *r.lemma1_rhs + kLemma1Slack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "per-iteration error bound violated: trial " << trial << " iter " << r.iter << " d_S "
          << *r.error_ds << " > bound " << *r.lemma1_rhs;
      throw InvariantViolation(msg.str());
    }
  }
  return traj;
}

ConvergenceTable convergence_experiment(const ExperimentSpec& spec, double epsilon_ref) {
  if (spec.n == 0 || spec.k == 0 || spec.k > spec.n || spec.m == 0 || spec.trials == 0 || spec.iters == 0) {
    throw DomainError("convergence_experiment needs positive n, m, trials, iters and 1 <= k <= n");
  }
  ConvergenceTable table;
  table.trajectories.resize(spec.trials);
  parallel_for(spec.trials, spec.threads,
               [&](std::size_t trial) { table.trajectories[trial] = run_trial(spec, trial); });

  std::vector<double> column(spec.trials);
  for (std::size_t t = 0; t <= spec.iters; ++t) {
    for (std::size_t i = 0; i < spec.trials; ++i) column[i] = *table.trajectories[i].records[t].error_ds;
    ConvergenceRow row;
    row.iter = t;
    double sum = 0.0;
    for (double x : column) sum += x;
    row.mean = sum / static_cast<double>(spec.trials);
    row.max = *std::max_element(column.begin(), column.end());
    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    row.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    row.closed_form = theory::closed_form_bound(epsilon_ref, t);
    table.rows.push_back(row);
  }
  return table;
}

std::vector<ValidatorResult> run_validation_suite(const SuiteOptions& o) {
  if (o.n < 2) throw DomainError("validation suite needs n >= 2");
  std::vector<ValidatorResult> out;
  std::size_t stream = 0;
  const auto next_seed = [&] { return derive_seed(o.seed, stream++); };

  {
    const std::vector<double> z = sample_standard_normal(next_seed(), o.normal_draws);
    std::vector<double> folded(z.size());
    std::transform(z.begin(), z.end(), folded.begin(), [](double x) { return std::abs(x); });
    const SampleMean plain = summarize(z);
    const SampleMean abs_mean = summarize(folded);
    out.push_back(mean_check("normal_mean", plain.mean, 0.0, plain.standard_error(), 4.0));
    out.push_back(mean_check("normal_abs_mean", abs_mean.mean, std::sqrt(2.0 / kPi),
                             abs_mean.standard_error(), 4.0));
  }

  const Vector e0 = basis(o.n, 0);
  for (const auto& [label, theta] : {std::pair{"mismatch_pi_6", kPi / 6}, std::pair{"mismatch_pi_3", kPi / 3},
                                     std::pair{"mismatch_pi_2", kPi / 2}}) {
    const Vector v = unit_pair_partner(o.n, theta);
    const double p = theta / kPi;
    const double est = mismatch_probability(e0, v, o.mismatch_draws, next_seed(), o.sign_offset, o.threads);
    out.push_back(mean_check(label, est, p, std::sqrt(p * (1 - p) / static_cast<double>(o.mismatch_draws)), 3.0));
  }

  {
    const double beta = kPi / 6;
    const SampleMean band = band_count_mean(e0, beta, o.band_m, o.band_trials, next_seed(), o.threads);
    out.push_back(mean_check("band_count_pi_6", band.mean, 2.0 * beta * static_cast<double>(o.band_m) / kPi,
                             band.standard_error(), 3.0));
  }

  {
    const Vector e1 = basis(o.n, 1);
    const ProjectionMeans proj =
        projection_expectation(e0, e1, o.projection_m, o.projection_trials, next_seed(), kDefaultEta, o.threads);
    out.push_back(mean_check("projection_minus", proj.minus.mean, std::sqrt(2.0), proj.minus.standard_error(), 4.0));
    out.push_back(mean_check("projection_plus", proj.plus.mean, 0.0, proj.plus.standard_error(), 4.0));
  }

  {
    const SeedSpec tail_seed = next_seed();
    const std::size_t k = std::min(o.tail_k, o.n / 2);
    const SparseUnitVector u = random_sparse_unit(o.n, k, derive_seed(tail_seed, 0));
    const SparseUnitVector v = random_sparse_unit(o.n, k, derive_seed(tail_seed, 1));
    RandomStream extra_stream(derive_seed(tail_seed, 2));
    const IndexSet extra = random_subset(o.n, k, extra_stream);
    const TailReport tails = tail_frequency_check(u.values(), v.values(), k, extra, o.tail_m, o.tail_trials,
                                                  o.tail_t, derive_seed(tail_seed, 3), kDefaultEta, o.threads);
    for (const TailStatistic& s : tails.stats) {
      ValidatorResult r{s.name, s.frequency, s.mean_bound, s.se, 0.0, s.pass};
      r.z = s.se > 0.0 ? (s.frequency - s.mean_bound) / s.se : 0.0;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace bitsense::montecarlo
