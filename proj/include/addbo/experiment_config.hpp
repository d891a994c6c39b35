#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "addbo/acquisition.hpp"
#include "addbo/batch.hpp"
#include "addbo/gibbs.hpp"
#include "addbo/kernel.hpp"
#include "addbo/run.hpp"

namespace addbo {

/// Everything an experiment command needs. Loaded from a JSON object whose
/// keys are the long flag names (without dashes); unknown keys are rejected.
struct ExperimentConfig {
  std::vector<int> dims{10};
  std::vector<int> samples{250};
  int trials = 10;
  std::uint64_t seed = 0;
  int seeds = 1;
  int jobs = 1;

  int T = 100;
  int B = 10;
  int n_cyc = 50;
  int n_init = 10;
  Variant variant = Variant::gibbs;
  Explorer explorer = Explorer::dpp;
  Combiner combiner = Combiner::random;
  bool combiner_set = false;
  int pool = kDefaultCandidatePool;
  int budget = kDefaultAcquisitionBudget;

  int burn_in = 50;
  int total_iters = 100;
  std::vector<double> alpha;  // empty: alpha = 1 for every slot
  std::optional<int> max_group_size;

  double bandwidth = 0.1;
  double scale = 5.0;
  double noise_sigma = 0.1;
  std::string beta_mode = "auto";  // auto, standard, scaled
  std::optional<int> grid_points;
  int features = 1024;

  std::string out = ".";

  KernelSpec kernel() const;
  GibbsConfig gibbs(int num_slots, std::uint64_t gibbs_seed) const;
  BetaSchedule schedule(int dims) const;
  BatchConfig batch() const;
  RunConfig run(std::uint64_t run_seed) const;
};

/// Every accepted key.
const std::vector<std::string>& config_keys();

/// Throws ConfigError naming the offending field.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Command-specific checks ("recover", "sequential", "batch").
void validate_for_command(const ExperimentConfig& cfg, const std::string& command);

}  // namespace addbo
