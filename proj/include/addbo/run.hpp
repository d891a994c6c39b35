#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "addbo/decomposition.hpp"
#include "addbo/gibbs.hpp"
#include "addbo/gp.hpp"
#include "addbo/random.hpp"
#include "addbo/regret.hpp"

namespace addbo {

/// How a run obtains its decomposition.
enum class Variant { known, np, fp, pl1, pl2, gibbs, gibbs_l };

std::string_view to_string(Variant v);
/// Accepts the CLI spellings (known, np, fp, pl1, pl2, gibbs, gibbs-l).
Variant parse_variant(std::string_view name);

/// A black-box function to maximize, with its (estimated) maximum for regret.
struct Objective {
  std::function<double(const Eigen::VectorXd&)> f;
  double known_max = 0.0;
  /// Ground-truth decomposition, required by the Known variant.
  std::optional<Decomposition> truth;
};

struct RunResult;

struct RunConfig {
  int T = 100;
  int n_init = 10;
  int n_cyc = 50;
  std::uint64_t seed = 0;
  Variant variant = Variant::gibbs;
  int acquisition_budget = 10000;
  /// Called after every completed round and once more on abort.
  std::function<void(const RunResult&)> on_round;

  /// Throws ConfigError on T < 1, n_cyc < 1, n_init < 1 or budget < 1.
  void validate() const;
};

struct DecompositionEvent {
  int t = 0;
  Decomposition decomp;
};

struct RunResult {
  std::string method;
  RegretTrace trace;
  /// Every evaluated point with its noisy observation.
  ObservationSet observations;
  /// Noise-free objective values, aligned with observations.
  std::vector<double> f_values;
  /// Round of each observation (0 for the initial random design).
  std::vector<int> rounds;
  std::vector<DecompositionEvent> decompositions;
  LearningCounters learning;
  int jitter_escalations = 0;
  double known_max = 0.0;
  bool truncated = false;
  std::string abort_reason;
};

/// Decomposition for a learning point of `variant`. Gibbs variants start from
/// the fully partitioned assignment; the Gibbs seed comes from `rng`.
Decomposition learn_decomposition(Variant variant, const ObservationSet& data, const KernelSpec& spec,
                                  const GibbsConfig& gibbs, const std::optional<Decomposition>& truth,
                                  Rng& rng, int* escalations = nullptr);

}  // namespace addbo
