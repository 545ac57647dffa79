#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "bitsense/biht.hpp"
#include "bitsense/errors.hpp"
#include "bitsense/io.hpp"
#include "bitsense/montecarlo.hpp"
#include "bitsense/raic.hpp"
#include "bitsense/theory.hpp"
#include "config.hpp"

namespace bitsense::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultIters = 20;
constexpr std::size_t kDefaultPairs = 500;
constexpr std::size_t kTheoryRows = 20;
// Shift applied to the sign threshold by --break-sgn-zero.
constexpr double kInjectedSignOffset = 0.25;

/// Usage problems detected after parsing (missing settings).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
T require(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required setting --") + flag);
  return *v;
}

SeedSpec base_seed(const ExperimentConfig& c) { return SeedSpec{c.seed.value_or(0), 0}; }

fs::path prepare_out_dir(const ExperimentConfig& c) {
  const fs::path dir = c.out_dir.value_or(fs::path("."));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void write_json(const fs::path& path, const Json& doc) {
  std::ofstream out = open_output(path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

Json trajectory_json(std::size_t trial, const Trajectory& traj) {
  Json rows = Json::array();
  for (const IterationRecord& r : traj.records) {
    Json row;
    row["trial"] = trial;
    row["iter"] = r.iter;
    row["d_s"] = r.error_ds ? Json(*r.error_ds) : Json(nullptr);
    row["mismatch_L"] = r.mismatch;
    row["lemma1_rhs"] = r.lemma1_rhs ? Json(*r.lemma1_rhs) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_trajectories(const fs::path& dir, OutputFormat format, const std::vector<Trajectory>& trajs) {
  if (format == OutputFormat::kJson) {
    Json all = Json::array();
    for (std::size_t i = 0; i < trajs.size(); ++i) {
      for (auto& row : trajectory_json(i, trajs[i])) all.push_back(std::move(row));
    }
    write_json(dir / "trajectory.json", all);
    return;
  }
  std::ofstream out = open_output(dir / "trajectory.csv");
  io::write_trajectory_header(out);
  for (std::size_t i = 0; i < trajs.size(); ++i) io::write_trajectory_rows(out, i, trajs[i]);
  if (!out) throw IoError("failed writing trajectory.csv");
}

struct RunInputs {
  std::optional<fs::path> matrix;
  std::optional<fs::path> signal;
};

int cmd_run(const ExperimentConfig& c, const RunInputs& inputs, std::ostream& out) {
  const std::size_t k = require(c.k, "k");
  const std::size_t iters = c.iters.value_or(kDefaultIters);
  const double eta = c.eta.value_or(kDefaultEta);
  const OutputFormat format = c.format.value_or(OutputFormat::kCsv);

  Json summary;
  summary["command"] = "run";
  std::vector<Trajectory> trajs;

  if (inputs.matrix || inputs.signal) {
    if (!inputs.matrix || !inputs.signal) throw UsageError("--matrix and --signal must be given together");
    const MeasurementMatrix a = io::load_matrix(*inputs.matrix);
    const SparseUnitVector truth(io::load_vector(*inputs.signal), k);
    if (truth.size() != a.cols()) throw DimensionError("signal length does not match matrix columns");
    BihtConfig config;
    config.k = k;
    config.eta = eta;
    config.max_iters = iters;
    config.init = RandomSparseUnitInit{montecarlo::trial_seeds(base_seed(c), 0).init};
    trajs.push_back(run_biht(a, sign_measure(a, truth.values()), config, truth));
    summary["n"] = a.cols();
    summary["k"] = k;
    summary["m"] = a.rows();
    summary["trials"] = 1;
    summary["final_mean_d_s"] = trajs.back().records.back().error_ds.value_or(std::nan(""));
  } else {
    montecarlo::ExperimentSpec spec;
    spec.n = require(c.n, "n");
    spec.k = k;
    spec.m = require(c.m, "m");
    spec.trials = c.trials.value_or(1);
    spec.iters = iters;
    spec.eta = eta;
    spec.seed = base_seed(c);
    spec.threads = c.threads.value_or(0);
    if (spec.k > spec.n) throw DomainError("--k must not exceed --n");
    montecarlo::ConvergenceTable table = montecarlo::convergence_experiment(spec, c.epsilon.value_or(0.5));
    summary["n"] = spec.n;
    summary["k"] = spec.k;
    summary["m"] = spec.m;
    summary["trials"] = spec.trials;
    Json rows = Json::array();
    for (const auto& r : table.rows) {
      Json row;
      row["iter"] = r.iter;
      row["mean_d_s"] = r.mean;
      row["median_d_s"] = r.median;
      row["max_d_s"] = r.max;
      if (c.epsilon) row["closed_form"] = r.closed_form;
      rows.push_back(std::move(row));
    }
    summary["per_iter"] = std::move(rows);
    summary["final_mean_d_s"] = table.rows.back().mean;
    trajs = std::move(table.trajectories);
  }

  double slack = std::numeric_limits<double>::infinity();
  for (const Trajectory& t : trajs) slack = std::min(slack, t.lemma1_min_slack());
  summary["iters"] = iters;
  summary["eta"] = eta;
  summary["seed"] = c.seed.value_or(0);
  summary["lemma1_min_slack"] = slack;

  const fs::path dir = prepare_out_dir(c);
  emit_trajectories(dir, format, trajs);
  write_json(dir / "summary.json", summary);
  out << "wrote " << (dir / (format == OutputFormat::kJson ? "trajectory.json" : "trajectory.csv")).string()
      << " and " << (dir / "summary.json").string() << '\n';
  return kExitOk;
}

int cmd_raic(const ExperimentConfig& c, const std::optional<fs::path>& matrix_path, std::ostream& out,
             std::ostream& err) {
  const SeedSpec seed = base_seed(c);
  const MeasurementMatrix a = matrix_path ? io::load_matrix(*matrix_path)
                                          : MeasurementMatrix::gaussian(require(c.m, "m"), require(c.n, "n"),
                                                                        derive_seed(seed, 0));
  RaicCertifyConfig config;
  config.k = require(c.k, "k");
  config.delta = require(c.delta, "delta");
  config.num_pairs = c.pairs.value_or(kDefaultPairs);
  config.num_small_pairs = c.small_pairs.value_or(config.num_pairs / 5);
  config.max_extra = c.max_j.value_or(config.k);
  config.seed = derive_seed(seed, 1);
  config.eta = c.eta.value_or(kDefaultEta);
  config.threads = c.threads.value_or(0);
  const RaicReport report = raic_certify(a, config);

  const fs::path dir = prepare_out_dir(c);
  if (c.format.value_or(OutputFormat::kCsv) == OutputFormat::kJson) {
    Json rows = Json::array();
    for (const RaicRecord& r : report.records) {
      rows.push_back(Json{{"pair_id", r.pair_id},   {"d_s", r.ds},     {"regime", regime_name(r.regime)},
                          {"residual", r.residual}, {"bound", r.bound}, {"ratio", r.ratio}});
    }
    write_json(dir / "raic.json", rows);
  } else {
    std::ofstream csv = open_output(dir / "raic.csv");
    io::write_raic_csv(csv, report);
  }
  std::size_t small = 0;
  for (const RaicRecord& r : report.records) small += r.regime == DistanceRegime::kSmall ? 1 : 0;
  Json summary;
  summary["delta"] = report.delta;
  summary["worst_ratio"] = report.worst_ratio;
  summary["n_pairs"] = report.samples;
  summary["n_violations"] = report.violations;
  summary["tau"] = report.tau;
  summary["n_small"] = small;
  write_json(dir / "raic_summary.json", summary);

  out << "worst_ratio " << io::format_double(report.worst_ratio) << " over " << report.samples << " pairs ("
      << report.violations << " violations)\n";
  if (report.violations > 0) {
    err << "RAIC bound exceeded on " << report.violations << " of " << report.samples << " pairs\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_validate(const ExperimentConfig& c, bool break_sgn_zero, std::ostream& out, std::ostream& err) {
  montecarlo::SuiteOptions options;
  options.seed = base_seed(c);
  if (c.n) options.n = *c.n;
  if (c.trials) {
    options.projection_trials = *c.trials;
    options.tail_trials = *c.trials;
  }
  options.threads = c.threads.value_or(0);
  if (break_sgn_zero) options.sign_offset = kInjectedSignOffset;
  const auto results = montecarlo::run_validation_suite(options);

  const fs::path dir = prepare_out_dir(c);
  if (c.format.value_or(OutputFormat::kCsv) == OutputFormat::kJson) {
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back(Json{{"name", r.name}, {"estimate", r.estimate}, {"theory", r.theory},
                          {"se", r.se},     {"z", r.z},               {"pass", r.pass}});
    }
    write_json(dir / "validate.json", rows);
  } else {
    std::ofstream csv = open_output(dir / "validate.csv");
    io::write_validator_csv(csv, results);
  }
  Json failed = Json::array();
  for (const auto& r : results) {
    if (!r.pass) failed.push_back(r.name);
  }
  Json summary;
  summary["n_validators"] = results.size();
  summary["n_failed"] = failed.size();
  summary["failed"] = failed;
  write_json(dir / "validate_summary.json", summary);

  out << results.size() - failed.size() << "/" << results.size() << " validators passed\n";
  if (!failed.empty()) {
    std::ostringstream rows;
    io::write_validator_csv(rows, results);
    err << "failing validators:\n";
    std::istringstream lines(rows.str());
    std::string line;
    std::getline(lines, line);
    err << line << '\n';
    while (std::getline(lines, line)) {
      if (line.ends_with(",false")) err << line << '\n';
    }
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_theory(const ExperimentConfig& c, std::ostream& out) {
  const double epsilon = require(c.epsilon, "epsilon");
  const double rho = require(c.rho, "rho");
  const std::size_t k = require(c.k, "k");
  const std::size_t n = require(c.n, "n");
  const theory::UniversalConstants u = theory::constants();
  const std::uint64_t m = theory::sample_complexity(epsilon, rho, k, n);
  const double limit = theory::recurrence_fixed_point(epsilon);

  if (c.format.value_or(OutputFormat::kCsv) == OutputFormat::kJson) {
    Json doc;
    doc["constants"] = Json{{"a", u.a}, {"b", u.b}, {"c", u.c}, {"c1", u.c1}, {"c2", u.c2}};
    doc["sample_complexity"] = m;
    doc["fixed_point"] = limit;
    Json rows = Json::array();
    for (std::size_t t = 0; t <= kTheoryRows; ++t) {
      rows.push_back(Json{{"t", t},
                          {"epsilon_t", theory::epsilon_recurrence(epsilon, t)},
                          {"closed_form", theory::closed_form_bound(epsilon, t)}});
    }
    doc["table"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  out << "quantity,value\n";
  out << "a," << io::format_double(u.a) << '\n';
  out << "b," << io::format_double(u.b) << '\n';
  out << "c," << io::format_double(u.c) << '\n';
  out << "c1," << io::format_double(u.c1) << '\n';
  out << "c2," << io::format_double(u.c2) << '\n';
  out << "m," << m << '\n';
  out << "fixed_point," << io::format_double(limit) << '\n';
  out << '\n';
  out << "t,epsilon_t,closed_form\n";
  for (std::size_t t = 0; t <= kTheoryRows; ++t) {
    out << t << ',' << io::format_double(theory::epsilon_recurrence(epsilon, t)) << ','
        << io::format_double(theory::closed_form_bound(epsilon, t)) << '\n';
  }
  return kExitOk;
}

int cmd_generate(const ExperimentConfig& c, const std::string& what, const fs::path& path, std::ostream& out) {
  const SeedSpec seed = base_seed(c);
  if (what == "matrix") {
    io::save_matrix(path, MeasurementMatrix::gaussian(require(c.m, "m"), require(c.n, "n"), derive_seed(seed, 0)));
  } else {
    io::save_vector(path, random_sparse_unit(require(c.n, "n"), require(c.k, "k"), derive_seed(seed, 1)).values());
  }
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bitsense: normalized binary iterative hard thresholding for 1-bit compressed sensing"};
  app.require_subcommand(1);

  ExperimentConfig flags;
  std::optional<std::string> config_path, out_dir, format;
  RunInputs run_inputs;
  std::optional<std::string> matrix_path, signal_path;
  bool break_sgn_zero = false;
  std::string what = "matrix";
  std::string generate_out;

  const auto add_shape = [&](CLI::App* sub, bool with_m) {
    sub->add_option("--n", flags.n, "signal dimension");
    sub->add_option("--k", flags.k, "sparsity");
    if (with_m) sub->add_option("--m", flags.m, "number of sign measurements");
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", flags.seed, "base seed");
    sub->add_option("--config", config_path, "JSON config file; flags take precedence");
    sub->add_option("--threads", flags.threads, "worker threads (default: BITSENSE_THREADS or all cores)");
    sub->add_option("--out-dir", out_dir, "output directory (default .)");
    sub->add_option("--format", format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* run = app.add_subcommand("run", "run BIHT trials and write trajectories");
  add_shape(run, true);
  add_common(run);
  run->add_option("--trials", flags.trials, "independent trials (default 1)");
  run->add_option("--iters", flags.iters, "BIHT iterations per trial (default 20)");
  run->add_option("--eta", flags.eta, "step size (default sqrt(2 pi))");
  run->add_option("--epsilon", flags.epsilon, "reference accuracy for the closed-form bound column");
  run->add_option("--matrix", matrix_path, "measurement matrix file (.csv or .bin)");
  run->add_option("--signal", signal_path, "true signal file (.csv or .bin)");

  CLI::App* raic = app.add_subcommand("raic", "sample the approximate invertibility condition");
  add_shape(raic, true);
  add_common(raic);
  raic->add_option("--delta", flags.delta, "RAIC accuracy parameter in (0, 1)");
  raic->add_option("--pairs", flags.pairs, "sampled pairs (default 500)");
  raic->add_option("--small-pairs", flags.small_pairs, "pairs forced below distance delta/b (default pairs/5)");
  raic->add_option("--max-j", flags.max_j, "largest extra coordinate set |J| (default k)");
  raic->add_option("--eta", flags.eta, "step size (default sqrt(2 pi))");
  raic->add_option("--matrix", matrix_path, "measurement matrix file instead of a Gaussian draw");

  CLI::App* validate_cmd = app.add_subcommand("validate", "run the Monte Carlo validator battery");
  validate_cmd->add_option("--n", flags.n, "ambient dimension for the validators (default 50)");
  validate_cmd->add_option("--trials", flags.trials, "matrix draws for projection and tail validators");
  add_common(validate_cmd);
  validate_cmd->add_flag("--break-sgn-zero", break_sgn_zero, "fault injection: shift the sign threshold")
      ->group("");

  CLI::App* theory_cmd = app.add_subcommand("theory", "print constants, sample complexity and the rate table");
  add_shape(theory_cmd, false);
  theory_cmd->add_option("--epsilon", flags.epsilon, "target accuracy in (0, 1)");
  theory_cmd->add_option("--rho", flags.rho, "failure probability in (0, 1)");
  theory_cmd->add_option("--config", config_path, "JSON config file; flags take precedence");
  theory_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* generate = app.add_subcommand("generate", "write a Gaussian matrix or sparse unit signal to a file");
  generate->add_option("what", what, "matrix or signal")->check(CLI::IsMember({"matrix", "signal"}));
  add_shape(generate, true);
  generate->add_option("--seed", flags.seed, "base seed");
  generate->add_option("--config", config_path, "JSON config file; flags take precedence");
  generate->add_option("--out", generate_out, "output path; .bin selects the binary format")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (out_dir) flags.out_dir = fs::path(*out_dir);
    if (format) flags.format = *format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    if (matrix_path) run_inputs.matrix = fs::path(*matrix_path);
    if (signal_path) run_inputs.signal = fs::path(*signal_path);
    ExperimentConfig config = flags;
    if (config_path) config.fill_from(load_config_file(*config_path));
    validate(config);

    if (run->parsed()) return cmd_run(config, run_inputs, out);
    if (raic->parsed()) return cmd_raic(config, run_inputs.matrix, out, err);
    if (validate_cmd->parsed()) return cmd_validate(config, break_sgn_zero, out, err);
    if (theory_cmd->parsed()) return cmd_theory(config, out);
    if (generate->parsed()) return cmd_generate(config, what, generate_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const montecarlo::InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace bitsense::cli
