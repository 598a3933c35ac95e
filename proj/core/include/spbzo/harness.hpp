#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spbzo/constants.hpp"
#include "spbzo/types.hpp"

namespace spbzo {

struct SigmaSpec {
  enum class Kind { explicit_value, thm38, thm52 };

  Kind kind = Kind::explicit_value;
  double value = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
};

struct ExperimentConfig {
  std::string fn_id = "QUAD";
  int algorithm = 1;
  Vec x0;
  SigmaSpec sigma;
  // Ignored under the thm52 rule, which sets gamma = sigma.
  double gamma = 1.0;
  int horizon = 100;
  int seeds = 100;
  std::uint64_t master_seed = 1;
  std::string set = "whole";
  // Radius of B(x, delta) for the Goldstein metric when sigma does not come from a rule.
  std::optional<double> goldstein_delta;
  // Draws per iterate when w~_k needs a Monte Carlo gradient.
  int wtilde_mc_n = 10000;
  std::filesystem::path output_dir;
  // 0 = hardware concurrency. Does not affect results.
  int threads = 0;
};

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

// FNV-1a over the canonical JSON of every field that changes results
// (output_dir and threads excluded), as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

// Everything fixed before the first seed runs.
struct ResolvedExperiment {
  double sigma = 0.0;
  double gamma = 0.0;
  std::string metric;  // relative_gap | wtilde | goldstein
  std::optional<double> delta;
  std::optional<double> theorem_rhs;
  std::string theorem;
  std::optional<SigmaRule> sigma_rule;
  std::optional<ScheduleTheorem52> schedule52;
  std::vector<std::string> warnings;
};

// Throws ConfigError for unresolvable functions, sets or sigma rules.
ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

struct SeedSummary {
  int index = 0;
  std::uint64_t seed = 0;
  int argmin_k = 0;
  double min_metric = 0.0;
  std::optional<double> goldstein_at_argmin;
  bool goldstein_exact = false;
  long long oracle_calls = 0;
};

struct AggregateResult {
  int seeds = 0;
  int malformed = 0;
  std::vector<double> mean_metric;  // per k
  std::vector<double> stderr_metric;
  // over seeds of min_k metric
  double mean_min = 0.0;
  double stderr_min = 0.0;
  // first k minimizing the per-k mean
  int argmin_of_mean = 0;
  std::optional<double> theorem_rhs;
};

struct RunRecord {
  std::string config_hash;
  ExperimentConfig config;
  ResolvedExperiment resolved;
  std::vector<SeedSummary> per_seed;
  AggregateResult aggregate;
  // mean_min <= rhs + 4 stderr_min; empty when no RHS applies.
  std::optional<bool> passed;
};

// Runs all seeds, writes <output_dir>/run.json, seed_NNNNN.jsonl,
// seed_NNNNN.summary.json, aggregate.csv and summary.json.
RunRecord run_experiment(const ExperimentConfig& cfg);

// Recomputes the aggregate from the seed_*.jsonl files (and the RHS stored in
// run.json when present) and rewrites aggregate.csv.
AggregateResult aggregate(const std::filesystem::path& run_dir);

std::string run_record_to_json(const RunRecord& rec);

}  // namespace spbzo
