#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "addbo/decomposition.hpp"
#include "addbo/domain.hpp"
#include "addbo/kernel.hpp"
#include "addbo/random.hpp"
#include "addbo/run.hpp"

namespace addbo {

inline constexpr int kDefaultFeaturesPerGroup = 1024;

/// Random cosine-feature approximation of a draw from GP(0, k_SE) on one group:
/// f(x) = sqrt(2 scale / F) sum_i w_i cos(omega_i . x + b_i) with
/// omega ~ N(0, I / l^2), b ~ U[0, 2 pi), w ~ N(0, 1).
struct FeatureComponent {
  std::vector<int> dims;
  Eigen::MatrixXd frequencies;  // F x |dims|
  Eigen::VectorXd phases;
  Eigen::VectorXd weights;
  double amplitude = 0.0;

  /// On a point restricted to `dims`.
  double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd evaluate_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) const;
  Eigen::VectorXd gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Additive test function sum_m f_m(x^{A_m}) over a ground-truth partition.
class SyntheticFunction {
 public:
  SyntheticFunction(Decomposition truth, std::vector<FeatureComponent> components, BoxDomain domain);

  const Decomposition& truth() const { return truth_; }
  const std::vector<FeatureComponent>& components() const { return components_; }
  const BoxDomain& domain() const { return domain_; }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Value of component i at a full point.
  double component_value(int i, const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Sum of per-component maxima (components are independent).
  double known_max() const { return known_max_; }
  const Eigen::VectorXd& argmax() const { return argmax_; }
  /// Convergence tolerance of each per-component search.
  double max_tolerance() const { return 1e-4; }

  Objective objective() const;

 private:
  Decomposition truth_;
  std::vector<FeatureComponent> components_;
  BoxDomain domain_;
  double known_max_ = 0.0;
  Eigen::VectorXd argmax_;
};

/// Random partition of `dims` dimensions into at least two groups of one to
/// three dimensions each.
Decomposition sample_truth_partition(int dims, Rng& rng);

/// Draws a ground-truth partition and one feature component per group on the
/// unit box. Throws InputError for dims < 2.
SyntheticFunction generate_synthetic(int dims, std::uint64_t seed, const KernelSpec& spec,
                                     int features_per_group = kDefaultFeaturesPerGroup);

/// Maximum of one component over its sub-box: grid scan followed by
/// projected gradient ascent from the best grid nodes.
std::pair<double, Eigen::VectorXd> maximize_component(const FeatureComponent& c, const BoxDomain& box);

}  // namespace addbo
