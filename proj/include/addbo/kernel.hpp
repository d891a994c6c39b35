#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "addbo/decomposition.hpp"

namespace addbo {

/// Shared squared-exponential hyperparameters: every group uses the same
/// isotropic bandwidth and scale. noise_sigma is the observation noise
/// standard deviation.
struct KernelSpec {
  double bandwidth = 0.1;
  double scale = 5.0;
  double noise_sigma = 0.1;

  /// Throws InputError unless bandwidth > 0, scale > 0, noise_sigma >= 0.
  void validate() const;
  double noise_variance() const { return noise_sigma * noise_sigma; }
};

/// scale * exp(-|xa - xb|^2 / (2 l^2)) on points already restricted to a
/// group's dimensions.
double group_kernel(const Eigen::Ref<const Eigen::VectorXd>& xa,
                    const Eigen::Ref<const Eigen::VectorXd>& xb,
                    const KernelSpec& spec);

/// Group kernel between every row of `a` and every row of `b` (both already
/// restricted to the group's dimensions). Result is a.rows() x b.rows().
Eigen::MatrixXd group_cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                   const Eigen::Ref<const Eigen::MatrixXd>& b,
                                   const KernelSpec& spec);

/// Columns `dims` of `points`, in the order given.
Eigen::MatrixXd select_columns(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               std::span<const int> dims);

/// Per-dimension scaled squared distances (x_ij - x_tj)^2 / (2 l^2) between
/// all pairs of training points.
class DistanceCache {
 public:
  DistanceCache() = default;
  DistanceCache(const Eigen::Ref<const Eigen::MatrixXd>& points, double bandwidth);

  int size() const { return n_; }
  int dims() const { return static_cast<int>(per_dim_.size()); }
  double bandwidth() const { return bandwidth_; }
  const Eigen::MatrixXd& dimension(int j) const { return per_dim_.at(j); }

 private:
  int n_ = 0;
  double bandwidth_ = 0.0;
  std::vector<Eigen::MatrixXd> per_dim_;
};

/// Gram matrix of one group's kernel over the cached points. Accumulates the
/// cached distances in the order of `dims`; an empty group gives all zeros.
Eigen::MatrixXd group_gram(const DistanceCache& cache, std::span<const int> dims,
                           const KernelSpec& spec);

/// K_n = sum over nonempty groups of the group Gram matrices.
Eigen::MatrixXd gram_matrix(const DistanceCache& cache, const Decomposition& decomp,
                            const KernelSpec& spec);

/// Per-slot Gram matrices kept in sync with a decomposition, so moving one
/// dimension only rebuilds the two affected groups.
class GroupGramSet {
 public:
  GroupGramSet(const DistanceCache& cache, Decomposition decomp, const KernelSpec& spec);

  const Decomposition& decomposition() const { return decomp_; }
  /// Gram of slot m; all zeros when the slot is empty.
  const Eigen::MatrixXd& group(int m) const;
  /// Sum over nonempty slots in ascending slot order.
  Eigen::MatrixXd total() const;

  /// Moves dimension j from m_from to m_to and rebuilds both groups from
  /// their member lists. Throws InputError if j is not in m_from.
  void move_dimension(int j, int m_from, int m_to);

 private:
  const DistanceCache* cache_;
  KernelSpec spec_;
  Decomposition decomp_;
  std::vector<Eigen::MatrixXd> grams_;  // 0x0 for empty slots
  Eigen::MatrixXd zero_;
};

}  // namespace addbo
