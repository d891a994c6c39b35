#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "addbo/domain.hpp"
#include "addbo/gp.hpp"
#include "addbo/random.hpp"

namespace addbo {

/// beta_t^{(m)} = |A_m| log(2t) / divisor.
struct BetaSchedule {
  enum class Mode { standard, scaled };

  Mode mode = Mode::standard;
  double divisor = 1.0;

  static BetaSchedule standard() { return {Mode::standard, 1.0}; }
  static BetaSchedule scaled() { return {Mode::scaled, 5.0}; }
  /// Scaled for D >= 20, standard otherwise.
  static BetaSchedule for_dims(int dims) { return dims >= 20 ? scaled() : standard(); }

  /// Throws InputError for t < 1 or group_size < 1.
  double beta(int group_size, int t) const;
};

inline constexpr int kDefaultAcquisitionBudget = 10000;

/// mu + sqrt(beta) sigma of group m at a point of its subspace.
double ucb(const GPState& state, int m, const Eigen::Ref<const Eigen::VectorXd>& x, double beta);
/// mu - sqrt(beta) sigma.
double lcb(const GPState& state, int m, const Eigen::Ref<const Eigen::VectorXd>& x, double beta);

/// UCB of group m at every row of `points`.
Eigen::VectorXd ucb_batch(const GPState& state, int m,
                          const Eigen::Ref<const Eigen::MatrixXd>& points, double beta);

/// Scores every row of a candidate matrix.
using BatchObjective = std::function<Eigen::VectorXd(const Eigen::Ref<const Eigen::MatrixXd>&)>;

struct AcquisitionOptimum {
  Eigen::VectorXd x;
  double value = 0.0;
  /// Best value among the random candidates, before local refinement.
  double best_random_value = 0.0;
};

/// Scores `budget` uniform points in `box` and, on continuous boxes, runs
/// projected gradient ascent (central differences, step 1e-5, backtracking,
/// at most 100 steps) from the best. On discrete boxes the candidates are
/// snapped to the grid and the best one is returned as is.
AcquisitionOptimum maximize_in_box(const BatchObjective& objective, const BoxDomain& box,
                                   int budget, Rng& rng);

/// Maximizes the UCB of group m over its sub-box of `domain`.
AcquisitionOptimum optimize_group_acquisition(const GPState& state, int m,
                                              const BoxDomain& domain, double beta,
                                              int budget, Rng& rng);

/// Builds a full point from per-group maximizers: coordinates of group m are
/// maximized on objective_for(m); any dimension not covered by a nonempty
/// group is drawn uniformly. Group m draws from substream (seed, t, m).
Eigen::VectorXd select_sequential_point(const Decomposition& decomp, const BoxDomain& domain,
                                        const std::function<BatchObjective(int m)>& objective_for,
                                        int budget, std::uint64_t seed, int t);

/// Add-GP-UCB step: per-group UCB with beta_t from `schedule`.
Eigen::VectorXd select_sequential_point(const GPState& state, const BoxDomain& domain,
                                        const BetaSchedule& schedule, int t, int budget,
                                        std::uint64_t seed);

}  // namespace addbo
