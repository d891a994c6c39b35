#include "addbo/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "addbo/errors.hpp"

namespace addbo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

Eigen::MatrixXd log_elementary_symmetric(const Eigen::Ref<const Eigen::VectorXd>& eigenvalues, int k) {
  const Eigen::Index n = eigenvalues.size();
  Eigen::MatrixXd e = Eigen::MatrixXd::Constant(k + 1, n + 1, kNegInf);
  e.row(0).setZero();
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double lam = eigenvalues[i - 1];
    const double log_lam = lam > 0.0 ? std::log(lam) : kNegInf;
    for (int l = 1; l <= k; ++l) {
      const double with = log_lam == kNegInf || e(l - 1, i - 1) == kNegInf ? kNegInf
                                                                           : log_lam + e(l - 1, i - 1);
      e(l, i) = log_add(e(l, i - 1), with);
    }
  }
  return e;
}

std::vector<int> kdpp_sample(const SymmetricEigen& kernel, int k, Rng& rng) {
  const int n = static_cast<int>(kernel.values.size());
  if (k < 0) throw InputError("kdpp_sample: k must be >= 0");
  if (k > n) throw InputError("kdpp_sample: k = " + std::to_string(k) + " exceeds ground set of " +
                              std::to_string(n));
  if (k == 0) return {};
  if (k == n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  const Eigen::MatrixXd e = log_elementary_symmetric(kernel.values, k);
  if (e(k, n) == kNegInf)
    throw NumericalError("kdpp_sample: kernel has fewer than k positive eigenvalues");

  // Phase 1: choose k eigenvectors.
  std::vector<int> chosen;
  int remaining = k;
  for (int i = n; i >= 1 && remaining > 0; --i) {
    if (remaining == i) {
      for (int r = i; r >= 1; --r) chosen.push_back(r - 1);
      break;
    }
    const double lam = kernel.values[i - 1];
    if (!(lam > 0.0)) continue;
    const double log_p = std::log(lam) + e(remaining - 1, i - 1) - e(remaining, i);
    if (std::log(uniform01(rng)) < log_p) {
      chosen.push_back(i - 1);
      --remaining;
    }
  }

  // Phase 2: sample from the projection DPP spanned by the chosen vectors.
  Eigen::MatrixXd v(n, static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = kernel.vectors.col(chosen[c]);

  std::vector<int> picked;
  while (v.cols() > 0) {
    const Eigen::VectorXd weight = v.rowwise().squaredNorm();
    const double total = weight.sum();
    double u = uniform01(rng) * total;
    int item = n - 1;
    for (int i = 0; i < n; ++i) {
      u -= weight[i];
      if (u <= 0.0) {
        item = i;
        break;
      }
    }
    picked.push_back(item);

    Eigen::Index pivot = 0;
    v.row(item).cwiseAbs().maxCoeff(&pivot);
    const Eigen::VectorXd pivot_col = v.col(pivot);
    const double pivot_val = pivot_col[item];
    Eigen::MatrixXd next(n, v.cols() - 1);
    for (Eigen::Index c = 0, out = 0; c < v.cols(); ++c) {
      if (c == pivot) continue;
      next.col(out++) = v.col(c) - pivot_col * (v(item, c) / pivot_val);
    }
    // Re-orthonormalize (modified Gram-Schmidt).
    for (Eigen::Index c = 0; c < next.cols(); ++c) {
      for (Eigen::Index p = 0; p < c; ++p) next.col(c) -= next.col(p).dot(next.col(c)) * next.col(p);
      const double norm = next.col(c).norm();
      if (norm > 0.0) next.col(c) /= norm;
    }
    v = std::move(next);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<int> kdpp_sample(const Eigen::Ref<const Eigen::MatrixXd>& kernel, int k, Rng& rng) {
  if (kernel.rows() != kernel.cols()) throw InputError("kdpp_sample: kernel must be square");
  const Eigen::MatrixXd sym = 0.5 * (kernel + kernel.transpose());
  return kdpp_sample(clamped_eigen(sym), k, rng);
}

std::vector<int> greedy_logdet_select(const Eigen::Ref<const Eigen::MatrixXd>& kernel, int k) {
  const Eigen::Index n = kernel.rows();
  if (kernel.cols() != n) throw InputError("greedy_logdet_select: kernel must be square");
  if (k < 0 || k > n) throw InputError("greedy_logdet_select: k out of range");
  Eigen::MatrixXd s = kernel;
  std::vector<bool> used(n, false);
  std::vector<int> picks;
  for (int step = 0; step < k; ++step) {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!used[i] && (best < 0 || s(i, i) > s(best, best))) best = i;
    used[best] = true;
    picks.push_back(static_cast<int>(best));
    const double pivot = s(best, best);
    if (pivot > 0.0) {
      const Eigen::VectorXd col = s.col(best);
      s.noalias() -= col * col.transpose() / pivot;
    }
  }
  return picks;
}

}  // namespace addbo
