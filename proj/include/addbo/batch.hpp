#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "addbo/acquisition.hpp"
#include "addbo/domain.hpp"
#include "addbo/gibbs.hpp"
#include "addbo/gp.hpp"
#include "addbo/random.hpp"
#include "addbo/run.hpp"

namespace addbo {

enum class Explorer { dpp, pe, rand };
enum class Combiner { random, quality };

std::string_view to_string(Explorer e);
std::string_view to_string(Combiner c);
Explorer parse_explorer(std::string_view name);
Combiner parse_combiner(std::string_view name);

inline constexpr int kDefaultCandidatePool = 512;

struct BatchConfig {
  int batch_size = 10;
  Explorer explorer = Explorer::dpp;
  Combiner combiner = Combiner::random;
  int candidate_pool_size = kDefaultCandidatePool;

  /// Throws ConfigError on batch_size < 2 or a pool smaller than B - 1.
  void validate() const;
  /// Batch-UCB-{PE,DPP}[-Fnc], or Rand.
  std::string method_name() const;
};

/// Candidate pool of one group and the subset whose optimistic value
/// mu + 2 sqrt(beta_{t+1}) sigma reaches the best pessimistic value
/// max LCB_t over the pool.
struct RelevanceRegion {
  int group = 0;
  Eigen::MatrixXd candidates;  // rows in the group subspace
  std::vector<char> mask;
  Eigen::VectorXd ucb;  // UCB_t of every candidate
  Eigen::VectorXd lcb;
  int ucb_argmax = 0;

  std::vector<int> members() const;
  int size() const;
};

/// Region from precomputed posterior means and standard deviations.
RelevanceRegion relevance_region_from_posterior(int group, Eigen::MatrixXd candidates,
                                                const Eigen::Ref<const Eigen::VectorXd>& mean,
                                                const Eigen::Ref<const Eigen::VectorXd>& sd,
                                                double beta_t, double beta_next);

/// Pool of `pool_size` uniform points in the group's sub-box (the whole
/// sub-grid when the domain is discrete and the grid fits in the pool).
RelevanceRegion build_relevance_region(const GPState& state, int m, const BoxDomain& domain,
                                       const BetaSchedule& schedule, int t, int pool_size, Rng& rng);

/// Region members, topped up with the highest-UCB non-members when fewer
/// than k are in the region.
std::vector<int> exploration_ground_set(const RelevanceRegion& region, int k);

/// Pure exploration: greedy conditional-variance picks over the region
/// members. Returns candidate indices in pick order.
std::vector<int> pe_greedy_select(const GPState& state, int m, const RelevanceRegion& region, int k);

/// k-DPP draw over the region members with the group posterior covariance
/// as kernel. Returns candidate indices.
std::vector<int> dpp_select(const GPState& state, int m, const RelevanceRegion& region, int k, Rng& rng);

/// Diverse points chosen for one group (rows in the group subspace).
struct GroupSelection {
  int group = 0;
  Eigen::MatrixXd points;
};

/// Combines per-group selections into full points by drawing each group's
/// rows in a uniformly random order. Dimensions not covered by a selection
/// are drawn uniformly from `domain`.
Eigen::MatrixXd combine_random(const Decomposition& decomp, const BoxDomain& domain,
                               const std::vector<GroupSelection>& selections, Rng& rng);

/// Output row i takes, from each group, the remaining point of highest
/// quality (ties to the lowest index).
Eigen::MatrixXd combine_by_quality(const Decomposition& decomp, const BoxDomain& domain,
                                   const std::vector<GroupSelection>& selections,
                                   const std::vector<Eigen::VectorXd>& quality, Rng& rng);

/// combine_by_quality with quality = UCB_t of each group.
Eigen::MatrixXd combine_quality(const Decomposition& decomp, const BoxDomain& domain,
                                const std::vector<GroupSelection>& selections, const GPState& state,
                                const BetaSchedule& schedule, int t, Rng& rng);

/// Batched BO: per round one UCB point plus B - 1 diverse points (or B
/// uniform points for the Rand explorer), all observed together.
RunResult run_batch_bo(const Objective& objective, const BoxDomain& domain, const BatchConfig& config,
                       const RunConfig& run, const GibbsConfig& gibbs, const KernelSpec& spec,
                       const BetaSchedule& schedule);

}  // namespace addbo
