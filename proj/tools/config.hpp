#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace bitsense::cli {

enum class OutputFormat { kCsv, kJson };

/// Settings shared by every subcommand. Unset optionals mean "not given";
/// each subcommand decides which ones it requires.
struct ExperimentConfig {
  std::optional<std::size_t> n, k, m;
  std::optional<double> eta;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon, rho, delta;
  std::optional<std::size_t> pairs, small_pairs, max_j;
  std::optional<std::size_t> threads;
  std::optional<std::filesystem::path> out_dir;
  std::optional<OutputFormat> format;

  /// Fills every field that is unset here from `lower`.
  void fill_from(const ExperimentConfig& lower);
};

/// Reads a JSON object whose keys match the long flag names with '-'
/// replaced by '_' (n, k, m, eta, iters, trials, seed, epsilon, rho, delta,
/// pairs, small_pairs, max_j, threads, out_dir, format). Unknown keys are
/// rejected. Throws bitsense::IoError or bitsense::DomainError.
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Throws DomainError for a non-positive dimension or epsilon/rho/delta outside (0, 1).
void validate(const ExperimentConfig& config);

}  // namespace bitsense::cli
