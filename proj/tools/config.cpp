#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "bitsense/errors.hpp"

namespace bitsense::cli {
namespace {

template <class T>
void fill(std::optional<T>& mine, const std::optional<T>& lower) {
  if (!mine && lower) mine = lower;
}

template <class T>
void read_key(const nlohmann::json& doc, const char* key, std::optional<T>& slot) {
  if (!doc.contains(key)) return;
  try {
    slot = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config key '") + key + "': " + e.what());
  }
}

void require_positive(const std::optional<std::size_t>& v, const char* name) {
  if (v && *v == 0) throw DomainError(std::string("--") + name + " must be positive");
}

void require_open_unit(const std::optional<double>& v, const char* name) {
  if (v && !(*v > 0.0 && *v < 1.0)) throw DomainError(std::string("--") + name + " must lie in (0, 1)");
}

}  // namespace

void ExperimentConfig::fill_from(const ExperimentConfig& lower) {
  fill(n, lower.n);
  fill(k, lower.k);
  fill(m, lower.m);
  fill(eta, lower.eta);
  fill(iters, lower.iters);
  fill(trials, lower.trials);
  fill(seed, lower.seed);
  fill(epsilon, lower.epsilon);
  fill(rho, lower.rho);
  fill(delta, lower.delta);
  fill(pairs, lower.pairs);
  fill(small_pairs, lower.small_pairs);
  fill(max_j, lower.max_j);
  fill(threads, lower.threads);
  fill(out_dir, lower.out_dir);
  fill(format, lower.format);
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("config " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DomainError("config must be a JSON object");

  static const char* kKnown[] = {"n",     "k",     "m",     "eta",   "iters",       "trials",
                                 "seed",  "epsilon", "rho", "delta", "pairs",       "small_pairs",
                                 "max_j", "threads", "out_dir", "format"};
  for (const auto& item : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), item.key()) == std::end(kKnown)) {
      throw DomainError("config: unknown key '" + item.key() + "'");
    }
  }

  ExperimentConfig c;
  read_key(doc, "n", c.n);
  read_key(doc, "k", c.k);
  read_key(doc, "m", c.m);
  read_key(doc, "eta", c.eta);
  read_key(doc, "iters", c.iters);
  read_key(doc, "trials", c.trials);
  read_key(doc, "seed", c.seed);
  read_key(doc, "epsilon", c.epsilon);
  read_key(doc, "rho", c.rho);
  read_key(doc, "delta", c.delta);
  read_key(doc, "pairs", c.pairs);
  read_key(doc, "small_pairs", c.small_pairs);
  read_key(doc, "max_j", c.max_j);
  read_key(doc, "threads", c.threads);
  std::optional<std::string> out_dir, format;
  read_key(doc, "out_dir", out_dir);
  read_key(doc, "format", format);
  if (out_dir) c.out_dir = *out_dir;
  if (format) {
    if (*format == "csv") {
      c.format = OutputFormat::kCsv;
    } else if (*format == "json") {
      c.format = OutputFormat::kJson;
    } else {
      throw DomainError("config: format must be csv or json");
    }
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  require_positive(c.n, "n");
  require_positive(c.k, "k");
  require_positive(c.m, "m");
  require_positive(c.iters, "iters");
  require_positive(c.trials, "trials");
  require_positive(c.pairs, "pairs");
  require_open_unit(c.epsilon, "epsilon");
  require_open_unit(c.rho, "rho");
  require_open_unit(c.delta, "delta");
  if (c.eta && !(*c.eta > 0.0)) throw DomainError("--eta must be positive");
  if (c.k && c.n && *c.k > *c.n) throw DomainError("--k must not exceed --n");
}

}  // namespace bitsense::cli
