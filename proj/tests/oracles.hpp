#pragma once

// Slow, independent reference implementations used to check the library.
// Everything here is written from the textbook formulas with plain loops and
// dense inverses, and shares no code with src/.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double se(const std::vector<double>& a, const std::vector<double>& b, double ell, double scale) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return scale * std::exp(-s / (2.0 * ell * ell));
}

inline std::vector<double> restrict(const Eigen::MatrixXd& pts, int row, const std::vector<int>& dims) {
  std::vector<double> out;
  for (int d : dims) out.push_back(pts(row, d));
  return out;
}

inline std::vector<double> restrict(const Eigen::VectorXd& x, const std::vector<int>& dims) {
  std::vector<double> out;
  for (int d : dims) out.push_back(x[d]);
  return out;
}

// Groups from a label vector, skipping empty labels.
inline std::vector<std::vector<int>> groups_of(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> g;
  for (std::size_t j = 0; j < labels.size(); ++j) g[labels[j]].push_back(static_cast<int>(j));
  std::vector<std::vector<int>> out;
  for (auto& [_, v] : g) out.push_back(v);
  return out;
}

inline double additive_kernel(const Eigen::MatrixXd& a, int i, const Eigen::MatrixXd& b, int t,
                              const std::vector<std::vector<int>>& groups, double ell, double scale) {
  double s = 0.0;
  for (const auto& g : groups) s += se(restrict(a, i, g), restrict(b, t, g), ell, scale);
  return s;
}

inline Eigen::MatrixXd gram(const Eigen::MatrixXd& pts, const std::vector<std::vector<int>>& groups, double ell,
                            double scale) {
  const int n = static_cast<int>(pts.rows());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < n; ++t) k(i, t) = additive_kernel(pts, i, pts, t, groups, ell, scale);
  return k;
}

// -1/2 (y' A^-1 y + log det A + n log 2 pi) with an explicit inverse.
inline double log_likelihood(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double noise_var,
                             bool constant = true) {
  const int n = static_cast<int>(y.size());
  const Eigen::MatrixXd a = k + noise_var * Eigen::MatrixXd::Identity(n, n);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const double quad = y.dot(lu.inverse() * y);
  const double logdet = std::log(lu.determinant());
  return -0.5 * (quad + logdet + (constant ? n * std::log(2.0 * M_PI) : 0.0));
}

struct Posterior {
  double mean;
  double var;
};

// Group-m posterior straight from the two-line formula with A^-1.
inline Posterior group_posterior(const Eigen::MatrixXd& pts, const Eigen::VectorXd& y,
                                 const std::vector<std::vector<int>>& groups, const std::vector<int>& group,
                                 const std::vector<double>& x, double ell, double scale, double noise_var) {
  const int n = static_cast<int>(pts.rows());
  const Eigen::MatrixXd ainv =
      (gram(pts, groups, ell, scale) + noise_var * Eigen::MatrixXd::Identity(n, n)).inverse();
  Eigen::VectorXd km(n);
  for (int i = 0; i < n; ++i) km[i] = se(restrict(pts, i, group), x, ell, scale);
  return {km.dot(ainv * y), se(x, x, ell, scale) - km.dot(ainv * km)};
}

inline double group_covariance(const Eigen::MatrixXd& pts, const std::vector<std::vector<int>>& groups,
                               const std::vector<int>& group, const std::vector<double>& x1,
                               const std::vector<double>& x2, double ell, double scale, double noise_var) {
  const int n = static_cast<int>(pts.rows());
  const Eigen::MatrixXd ainv =
      (gram(pts, groups, ell, scale) + noise_var * Eigen::MatrixXd::Identity(n, n)).inverse();
  Eigen::VectorXd k1(n), k2(n);
  for (int i = 0; i < n; ++i) {
    k1[i] = se(restrict(pts, i, group), x1, ell, scale);
    k2[i] = se(restrict(pts, i, group), x2, ell, scale);
  }
  return se(x1, x2, ell, scale) - k1.dot(ainv * k2);
}

// Full additive-kernel posterior mean k(x)' A^-1 y.
inline double full_posterior_mean(const Eigen::MatrixXd& pts, const Eigen::VectorXd& y,
                                  const std::vector<std::vector<int>>& groups, const Eigen::VectorXd& x,
                                  double ell, double scale, double noise_var) {
  const int n = static_cast<int>(pts.rows());
  const Eigen::MatrixXd ainv =
      (gram(pts, groups, ell, scale) + noise_var * Eigen::MatrixXd::Identity(n, n)).inverse();
  Eigen::MatrixXd xm = x.transpose();
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) k[i] = additive_kernel(pts, i, xm, 0, groups, ell, scale);
  return k.dot(ainv * y);
}

// Dirichlet-multinomial marginal as a product of Gamma ratios (small D only).
inline double assignment_prior(const std::vector<int>& sizes, const std::vector<double>& alpha) {
  double asum = 0.0;
  int d = 0;
  for (double a : alpha) asum += a;
  for (int s : sizes) d += s;
  double p = std::tgamma(asum) / std::tgamma(d + asum);
  for (std::size_t m = 0; m < sizes.size(); ++m) p *= std::tgamma(sizes[m] + alpha[m]) / std::tgamma(alpha[m]);
  return p;
}

// Every length-d labeling over d slots, dimension 0 most significant.
inline std::vector<std::vector<int>> all_labelings(int d) {
  std::vector<std::vector<int>> out;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= d;
  for (long code = 0; code < total; ++code) {
    std::vector<int> z(d);
    long c = code;
    for (int j = d - 1; j >= 0; --j) {
      z[j] = static_cast<int>(c % d);
      c /= d;
    }
    out.push_back(z);
  }
  return out;
}

inline std::vector<int> sizes_of(const std::vector<int>& labels, int slots) {
  std::vector<int> s(slots, 0);
  for (int l : labels) ++s[l];
  return s;
}

// P(S) = det(L_S) / sum over |S| = k of det(L_S), keyed by the sorted subset.
inline std::map<std::vector<int>, double> kdpp_distribution(const Eigen::MatrixXd& l, int k) {
  const int n = static_cast<int>(l.rows());
  std::map<std::vector<int>, double> p;
  double total = 0.0;
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - k, pick.end(), true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    Eigen::MatrixXd sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = l(s[a], s[b]);
    const double det = sub.determinant();
    p[s] = det;
    total += det;
  } while (std::next_permutation(pick.begin(), pick.end()));
  for (auto& [_, v] : p) v /= total;
  return p;
}

inline double subset_det(const Eigen::MatrixXd& l, const std::vector<int>& s) {
  Eigen::MatrixXd sub(s.size(), s.size());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b) sub(a, b) = l(s[a], s[b]);
  return sub.determinant();
}

// Greedy picks recomputing every conditional variance from scratch:
// K_ii - K_iS K_SS^-1 K_Si.
inline std::vector<int> greedy_conditional_variance(const Eigen::MatrixXd& k, int count) {
  const int n = static_cast<int>(k.rows());
  std::vector<int> chosen;
  for (int step = 0; step < count; ++step) {
    int best = -1;
    double best_v = -1.0;
    for (int i = 0; i < n; ++i) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      double v = k(i, i);
      if (!chosen.empty()) {
        const int s = static_cast<int>(chosen.size());
        Eigen::MatrixXd kss(s, s);
        Eigen::VectorXd kis(s);
        for (int a = 0; a < s; ++a) {
          kis[a] = k(i, chosen[a]);
          for (int b = 0; b < s; ++b) kss(a, b) = k(chosen[a], chosen[b]);
        }
        v -= kis.dot(kss.inverse() * kis);
      }
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

// Same-group indicator for every unordered pair.
inline double pair_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  int agree = 0, total = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      ++total;
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  return static_cast<double>(agree) / total;
}

}  // namespace oracle
