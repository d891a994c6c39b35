#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "addbo/random.hpp"

namespace addbo {

/// Axis-aligned box X = [lower, upper] in R^D, optionally discretized into
/// an evenly spaced grid per dimension.
class BoxDomain {
 public:
  BoxDomain(Eigen::VectorXd lower, Eigen::VectorXd upper,
            std::optional<int> grid_points_per_dim = std::nullopt);

  static BoxDomain unit(int dims, std::optional<int> grid_points_per_dim = std::nullopt);

  int dims() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  std::optional<int> grid_points_per_dim() const { return grid_; }
  bool discrete() const { return grid_.has_value(); }

  /// Restriction to a subset of dimensions, in the order given.
  BoxDomain sub_box(std::span<const int> dims) const;

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol = 0.0) const;

  Eigen::VectorXd clamp(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Nearest grid value per coordinate (identity on continuous domains).
  Eigen::VectorXd snap(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Uniform draw; snapped to the grid on discrete domains.
  Eigen::VectorXd sample(Rng& rng) const;

  /// `count` uniform draws as rows.
  Eigen::MatrixXd sample_rows(int count, Rng& rng) const;

  /// Number of grid nodes, or nullopt when continuous or when the count
  /// exceeds `cap`.
  std::optional<long> grid_size(long cap) const;

  /// Every grid node as rows (row-major lexicographic, last dim fastest).
  Eigen::MatrixXd grid_rows() const;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  std::optional<int> grid_;
};

}  // namespace addbo
