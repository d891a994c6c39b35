#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addbo/gibbs.hpp"
#include "addbo/kernel.hpp"

namespace addbo {

/// Pair metrics of one trial, each averaged over the post-burn-in samples.
struct RecoveryTrial {
  std::optional<double> together;
  std::optional<double> separated;
  double rand_index = 0.0;
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
  int count = 0;
};

struct RecoverySummary {
  int dims = 0;
  int samples = 0;
  int trials = 0;
  std::optional<MeanSd> together;
  std::optional<MeanSd> separated;
  std::optional<MeanSd> rand_index;
};

/// One trial: a fresh synthetic function, N uniform inputs with noisy
/// responses, Gibbs from the fully partitioned start.
RecoveryTrial recovery_trial(int dims, int samples, const GibbsConfig& gibbs, const KernelSpec& spec,
                             std::uint64_t seed, int trial);

/// Mean and sample standard deviation over the defined values.
std::optional<MeanSd> mean_sd(const std::vector<double>& values);

RecoverySummary summarize_recovery(int dims, int samples, const std::vector<RecoveryTrial>& trials);

RecoverySummary recovery_experiment(int dims, int samples, int trials, const GibbsConfig& gibbs,
                                    const KernelSpec& spec, std::uint64_t seed);

/// Writes together.csv, separated.csv and rand_index.csv into `dir`: rows D,
/// columns N, cells "mean ± sd" (empty when undefined).
void write_recovery_tables(const std::vector<RecoverySummary>& cells, const std::string& dir);

}  // namespace addbo
