#pragma once

#include <vector>

#include <Eigen/Core>

#include "addbo/gp.hpp"
#include "addbo/random.hpp"

namespace addbo {

/// log e_l(lambda_1..lambda_n) for l = 0..k and n = 0..N, as a (k+1) x (N+1)
/// table built with the log-space recurrence
/// e_l^n = e_l^{n-1} + lambda_n e_{l-1}^{n-1}.
Eigen::MatrixXd log_elementary_symmetric(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues, int k);

/// Exact draw from the k-DPP with kernel L: P(S) proportional to det(L_S)
/// over |S| = k. Eigenvalues must already be clamped to >= 0. Returns
/// ascending indices. Throws InputError for k > N and NumericalError when
/// fewer than k eigenvalues are positive.
std::vector<int> kdpp_sample(const SymmetricEigen& kernel, int k, Rng& rng);

/// Same, decomposing `kernel` first (eigenvalues >= -1e-6 clamped to 0).
std::vector<int> kdpp_sample(const Eigen::Ref<const Eigen::MatrixXd>& kernel, int k, Rng& rng);

/// Greedy determinant maximization: repeatedly takes the largest remaining
/// conditional variance (Schur complement diagonal), ties to the lowest
/// index. Returns indices in pick order.
std::vector<int> greedy_logdet_select(const Eigen::Ref<const Eigen::MatrixXd>& kernel, int k);

}  // namespace addbo
