#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "addbo/decomposition.hpp"
#include "addbo/gp.hpp"
#include "addbo/kernel.hpp"
#include "addbo/random.hpp"

namespace addbo {

struct GibbsConfig {
  /// Dirichlet concentrations, one per slot; empty means alpha_m = 1 for all.
  std::vector<double> alpha;
  int burn_in = 50;
  int total_iters = 100;
  /// Gibbs-L: no group may grow beyond this many dimensions.
  std::optional<int> max_group_size;
  std::uint64_t seed = 0;

  /// Throws ConfigError on total_iters <= burn_in, burn_in < 0,
  /// nonpositive alpha, alpha of the wrong length, or max_group_size < 1.
  void validate(int num_slots) const;
  std::vector<double> alpha_for(int num_slots) const;
};

/// log of the Dirichlet-multinomial marginal
/// Gamma(sum a) / Gamma(D + sum a) * prod_m Gamma(|A_m| + a_m) / Gamma(a_m).
double log_assignment_prior(std::span<const int> group_sizes, std::span<const double> alpha);

/// log p(D_n | z) + log p(z; alpha), unnormalized over z.
double decomposition_log_posterior(const ObservationSet& data, const Decomposition& decomp,
                                   const KernelSpec& spec, std::span<const double> alpha);

/// phi_m for every slot m when resampling z_j: the log-likelihood with z_j = m
/// (without the n log 2pi constant) plus log(|A_m \ {j}| + alpha_m). Slots
/// that would exceed max_group_size get -inf.
Eigen::VectorXd gibbs_conditional(const ObservationSet& data, const Decomposition& decomp,
                                  const KernelSpec& spec, std::span<const double> alpha, int j,
                                  std::optional<int> max_group_size = std::nullopt);

/// argmax_i (phi_i + omega_i) with omega_i i.i.d. standard Gumbel, i.e. a
/// draw from softmax(phi). Throws InputError if no entry is finite.
int gumbel_argmax(std::span<const double> phi, Rng& rng);

struct GibbsResult {
  /// One entry per post-burn-in sweep.
  std::vector<Decomposition> samples;
  std::vector<double> sample_log_likelihoods;
  Decomposition best;
  double best_log_likelihood = 0.0;
  int jitter_escalations = 0;
};

/// Collapsed Gibbs sampler over assignments. One sweep resamples
/// z_0..z_{D-1} in order; the best sample maximizes log p(D_n | z).
/// `on_sweep`, if set, sees the state after every sweep (burn-in included).
GibbsResult gibbs_sample(const ObservationSet& data, const KernelSpec& spec,
                         const GibbsConfig& config, const Decomposition& init,
                         const std::function<void(int sweep, const Decomposition&)>& on_sweep = {});

/// Best of `num_candidates` labelings drawn uniformly from all D^D
/// labelings, ranked by data likelihood.
Decomposition partial_learning(const ObservationSet& data, const KernelSpec& spec,
                               int num_candidates, Rng& rng);

/// Per-thread call counts of the learning entry points above.
struct LearningCounters {
  long gibbs_runs = 0;
  long partial_learning_runs = 0;
};
LearningCounters& learning_counters();

}  // namespace addbo
