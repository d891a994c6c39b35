#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "addbo/decomposition.hpp"
#include "addbo/domain.hpp"
#include "addbo/kernel.hpp"

namespace addbo {

/// Observed inputs (one row per point) and noisy responses.
struct ObservationSet {
  Eigen::MatrixXd points;
  Eigen::VectorXd values;

  ObservationSet() = default;
  ObservationSet(Eigen::MatrixXd pts, Eigen::VectorXd vals);

  int size() const { return static_cast<int>(points.rows()); }
  int dims() const { return static_cast<int>(points.cols()); }
  bool empty() const { return points.rows() == 0; }

  void append(const Eigen::Ref<const Eigen::VectorXd>& x, double y);
  /// Throws InputError on a row/length mismatch or a point outside `domain`.
  void validate(const BoxDomain& domain) const;
};

/// Diagonal jitter ladder tried after a plain factorization fails.
inline constexpr double kJitterLadder[] = {1e-10, 1e-8, 1e-6, 1e-4};

/// Cholesky factor of a symmetric matrix, escalating diagonal jitter along
/// kJitterLadder until the factorization succeeds.
class JitteredCholesky {
 public:
  JitteredCholesky() = default;
  /// Throws NumericalError (carrying the last jitter tried) when every rung fails.
  explicit JitteredCholesky(const Eigen::Ref<const Eigen::MatrixXd>& a);

  int size() const { return static_cast<int>(llt_.rows()); }
  double jitter() const { return jitter_; }
  int escalations() const { return escalations_; }

  Eigen::MatrixXd matrix_l() const { return llt_.matrixL(); }
  Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& b) const { return llt_.solve(b); }
  /// Overwrites b with L^{-1} b.
  void solve_lower_in_place(Eigen::Ref<Eigen::MatrixXd> b) const;
  double log_det() const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
  int escalations_ = 0;
};

/// -1/2 (y^T A^{-1} y + log|A| [+ n log 2 pi]) for A = gram + noise_variance I.
double log_likelihood_from_gram(const Eigen::Ref<const Eigen::MatrixXd>& gram,
                                const Eigen::Ref<const Eigen::VectorXd>& y,
                                double noise_variance, bool include_constant = true,
                                int* escalations = nullptr);

struct PosteriorPoint {
  double mean = 0.0;
  double variance = 0.0;
};

struct PosteriorBatch {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending, clamped to >= 0
  Eigen::MatrixXd vectors;  // columns
};

/// Fitted additive GP: one factorization of K_n + sigma^2 I shared by every
/// group posterior. Immutable after construction.
class GPState {
 public:
  /// An empty observation set yields the prior.
  static GPState fit(const ObservationSet& data, const Decomposition& decomp,
                     const KernelSpec& spec);

  int size() const { return static_cast<int>(y_.size()); }
  const Decomposition& decomposition() const { return decomp_; }
  const KernelSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return y_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const JitteredCholesky& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  /// Training inputs restricted to group m's dimensions.
  Eigen::MatrixXd group_points(int m) const;

 private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd y_;
  Decomposition decomp_;
  KernelSpec spec_;
  Eigen::MatrixXd gram_;
  JitteredCholesky chol_;
  Eigen::VectorXd alpha_;
};

double log_marginal_likelihood(const GPState& state);

/// Prior of any nonempty group: mean 0, variance = scale.
PosteriorPoint prior_group(const KernelSpec& spec);

/// Posterior of f_m at a point given in group m's subspace. Variance is
/// clamped at 0 only for raw values >= -1e-8; anything lower throws
/// NumericalError. Throws InputError for an empty group.
PosteriorPoint posterior_group(const GPState& state, int m,
                               const Eigen::Ref<const Eigen::VectorXd>& x);

/// Same as posterior_group for every row of `points`.
PosteriorBatch posterior_group_batch(const GPState& state, int m,
                                     const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Posterior covariance of f_m over the rows of `points`, symmetrized and
/// truncated to PSD. Eigenvalues below -1e-6 throw NumericalError.
Eigen::MatrixXd posterior_group_covariance(const GPState& state, int m,
                                           const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Eigen-decomposition of the clamped covariance above (its eigenvalues are
/// the clamped ones).
SymmetricEigen posterior_group_covariance_eigen(const GPState& state, int m,
                                                const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Eigen-decomposition with the -1e-6 check and truncation to >= 0.
SymmetricEigen clamped_eigen(const Eigen::Ref<const Eigen::MatrixXd>& sym, double tolerance = 1e-6);

}  // namespace addbo
