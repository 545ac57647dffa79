#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitsense/biht.hpp"
#include "bitsense/linalg.hpp"
#include "bitsense/raic.hpp"
#include "bitsense/rng.hpp"

namespace bitsense::montecarlo {

/// One row of validator output: `name,estimate,theory,se,z,pass`.
struct ValidatorResult {
  std::string name;
  double estimate = 0.0;
  double theory = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
};

/// z-score gate for mean checks. se == 0 passes only on exact agreement.
ValidatorResult mean_check(std::string name, double estimate, double theory, double se, double max_abs_z);

/// Fraction of N(0, I) rows Z with sgn(<u, Z>) != sgn(<v, Z>).
/// `sign_offset` shifts the sign threshold to sgn(x - offset); it exists only
/// to inject faults into the validators and must be 0 otherwise.
double mismatch_probability(std::span<const double> u, std::span<const double> v, std::size_t draws,
                            const SeedSpec& seed, double sign_offset = 0.0, std::size_t threads = 0);

struct SampleMean {
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation (n - 1 denominator)
  std::size_t trials = 0;
  double standard_error() const;
};

/// Mean over `trials` Gaussian m-row matrices of the number of rows whose
/// angle with u lies in [pi/2 - beta, pi/2 + beta]. The angle is taken inside
/// a fixed 2-plane through u (u and the basis vector least aligned with it),
/// where the projected rows are rotationally uniform. Expected 2 beta m / pi.
SampleMean band_count_mean(std::span<const double> u, double beta, std::size_t m, std::size_t trials,
                           const SeedSpec& seed, std::size_t threads = 0);

struct ProjectionMeans {
  SampleMean minus;  ///< <e_minus, h_A(u, v)>
  SampleMean plus;   ///< <e_plus, h_A(u, v)>
};

/// Means over independent m x n Gaussian matrices of the projections of
/// h_A(u, v) on e_minus and e_plus. Expected ||u - v||_2 and 0.
ProjectionMeans projection_expectation(std::span<const double> u, std::span<const double> v, std::size_t m,
                                       std::size_t trials, const SeedSpec& seed, double eta = kDefaultEta,
                                       std::size_t threads = 0);

struct TailStatistic {
  std::string name;
  std::size_t exceedances = 0;
  std::size_t counted = 0;    ///< draws with l > 0
  double frequency = 0.0;     ///< exceedances / counted
  double mean_bound = 0.0;    ///< mean over counted draws of min(1, tail bound at realized l)
  double se = 0.0;            ///< binomial standard error at mean_bound
  bool pass = false;          ///< frequency <= mean_bound + 3 se
};

struct TailReport {
  std::vector<TailStatistic> stats;  ///< u_minus_v, u_plus_v, g
  std::size_t skipped = 0;           ///< draws with l = 0, where the bounds say nothing
};

/// For each draw of A, conditions on the realized l = ||R_{u,v}||_0 and
/// checks the three deviation events for h_{A,J}(u, v) / eta:
///
///   |<e_minus, .> - sqrt(pi/2) (l/m) d_S / theta| >= l t / m   bound 2 exp(-l t^2 / 2)
///   |<e_plus, .>|                                 >= l t / m   bound 2 exp(-l t^2 / 2)
///   ||g_{A,J}(u, v) / eta||_2 >= 2 sqrt(2 k l) / m + l t / m    bound 2 exp(-l t^2 / 8)
///
/// u and v must be k-sparse unit vectors with u != +-v, and |J| <= 2k.
TailReport tail_frequency_check(std::span<const double> u, std::span<const double> v, std::size_t k,
                                const IndexSet& extra, std::size_t m, std::size_t trials, double t_param,
                                const SeedSpec& seed, double eta = kDefaultEta, std::size_t threads = 0);

/// Thrown when a deterministic inequality fails during an experiment.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical slack allowed on the per-iteration error bound.
inline constexpr double kLemma1Slack = 1e-9;

/// Seeds for trial `trial`: matrix, signal and initial iterate sub-streams.
struct TrialSeeds {
  SeedSpec matrix;
  SeedSpec signal;
  SeedSpec init;
};
TrialSeeds trial_seeds(const SeedSpec& base, std::size_t trial);

struct ExperimentSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t trials = 1;
  std::size_t iters = 1;
  double eta = kDefaultEta;
  SeedSpec seed{};
  std::size_t threads = 0;
};

/// Fresh signal, matrix and random start for one trial, then run_biht with
/// the truth attached. Throws InvariantViolation if any iterate breaks the
/// per-iteration error bound by more than kLemma1Slack.
Trajectory run_trial(const ExperimentSpec& spec, std::size_t trial);

struct ConvergenceRow {
  std::size_t iter = 0;
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
  double closed_form = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<Trajectory> trajectories;  ///< in trial order
};

/// Runs `trials` independent trials and aggregates d_S per iteration
/// alongside closed_form_bound(epsilon_ref, t).
ConvergenceTable convergence_experiment(const ExperimentSpec& spec, double epsilon_ref);

struct SuiteOptions {
  SeedSpec seed{};
  std::size_t n = 50;
  std::size_t normal_draws = 1'000'000;
  std::size_t mismatch_draws = 100'000;
  std::size_t band_m = 1000;
  std::size_t band_trials = 100;
  std::size_t projection_m = 200;
  std::size_t projection_trials = 2000;
  std::size_t tail_m = 500;
  std::size_t tail_trials = 2000;
  double tail_t = 0.1;
  std::size_t tail_k = 5;
  double sign_offset = 0.0;
  std::size_t threads = 0;
};

/// The full validator battery, one ValidatorResult per statistic, in a fixed order.
std::vector<ValidatorResult> run_validation_suite(const SuiteOptions& options);

}  // namespace bitsense::montecarlo
