#pragma once

// Random instance generation, the two synthetic experiments, theoretical
// bound evaluation and CSV emission. Sampling is deterministic: every
// (n, replication) pair derives its own seed from the base seed through
// mix_seed, so runs reproduce byte-for-byte regardless of scheduling.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mech/types.hpp"

namespace mech {

enum class CostDistribution {
  Uniform01,       // i.i.d. Uniform(0,1)
  Exp1Normalized,  // i.i.d. Exp(1), draws >= 1 rejected and resampled
};

CostDistribution distribution_by_name(std::string_view name);
std::string to_string(CostDistribution dist);

// splitmix64 chain over (n, replication, stream); the documented mixing
// function behind per-replication seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t n, std::uint64_t replication,
                       std::uint64_t stream);

// n i.i.d. costs in (0,1), converted exactly from their 53-bit double
// representation before any mechanism logic sees them.
std::vector<Rational> sample_costs(CostDistribution dist, int n, std::uint64_t seed);

// Costs and times sampled separately and sorted opposite ways, so cheaper
// agents take longer; times are Uniform[0,10) with deadline 10.
Instance sample_instance_paired(CostDistribution dist, int n, std::uint64_t seed);

struct TheoreticalBounds {
  double lower_eq;    // 1/2
  double lower_harm;  // max(0, 1 - 1/e - 8/k*)
  double upper;       // 1 - exp(-(1 + e^2 / (2 k*)))
};

// Double evaluation with error well below 1e-12.
TheoreticalBounds theoretical_bounds(int kstar);

struct ExperimentConfig {
  CostDistribution distribution = CostDistribution::Uniform01;
  int n_start = 1;
  int n_end = 1000;
  int n_step = 50;
  int replications = 500;
  std::uint64_t base_seed = 0;
};

struct ExperimentRow {
  int n = 0;
  int replication = 0;
  int kstar = 0;
  int participants_eq = 0;
  int participants_harm = 0;
  double ratio_eq = 0;
  double ratio_harm = 0;
  double bound_lower = 0;
  double bound_harm = 0;
  double bound_upper = 0;
  std::optional<double> fastest_harm;  // efficiency experiment only
  std::optional<double> fastest_igsp;  // efficiency experiment only
  bool count_mismatch = false;
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;  // (n, replication) order
};

// Experiment 1: equilibrium sizes of the Equal and Harmonic rules against
// k*. Each row re-checks the proven lower bounds exactly and throws
// GuaranteeViolation (with the instance serialized for replay) on failure.
ExperimentTable run_decentralization_experiment(const ExperimentConfig& config);

// Experiment 2: fastest completion time of the Harmonic equilibrium versus
// I-GSP run with the matching participant count (k = min(l+1, k*)). Rows
// where I-GSP cannot match the count are flagged count_mismatch instead of
// being compared.
ExperimentTable run_efficiency_experiment(const ExperimentConfig& config);

// Raw rows followed by one "avg" row per n; decimals carry 12 significant
// digits.
std::string to_csv(const ExperimentTable& table);
void write_csv(const ExperimentTable& table, const std::string& path);

}  // namespace mech
