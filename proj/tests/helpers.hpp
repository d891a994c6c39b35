#pragma once

#include <random>
#include <vector>

#include "addbo/decomposition.hpp"
#include "addbo/gp.hpp"
#include "addbo/random.hpp"

namespace testing {

inline Eigen::MatrixXd uniform_points(int n, int d, addbo::Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd p(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = u(rng);
  return p;
}

inline Eigen::VectorXd normal_vector(int n, addbo::Rng& rng, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline addbo::ObservationSet random_data(int n, int d, addbo::Rng& rng) {
  return addbo::ObservationSet(uniform_points(n, d, rng), normal_vector(n, rng, 2.0));
}

inline addbo::Decomposition random_decomposition(int d, addbo::Rng& rng) {
  std::uniform_int_distribution<int> lab(0, d - 1);
  std::vector<int> z(d);
  for (int& v : z) v = lab(rng);
  return addbo::Decomposition(z);
}

inline std::vector<int> labels(const addbo::Decomposition& z) {
  return {z.assignment().begin(), z.assignment().end()};
}

// A wider bandwidth than the default keeps small random instances well
// conditioned and the posteriors non-trivial.
inline Eigen::MatrixXd random_psd(int n, addbo::Rng& rng) {
  Eigen::MatrixXd a(n, n);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a * a.transpose() / n + 0.05 * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace testing
