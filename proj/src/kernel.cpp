#include "addbo/kernel.hpp"

#include <cmath>

#include "addbo/errors.hpp"

namespace addbo {

void KernelSpec::validate() const {
  if (!(bandwidth > 0.0)) throw InputError("KernelSpec: bandwidth must be > 0");
  if (!(scale > 0.0)) throw InputError("KernelSpec: scale must be > 0");
  if (!(noise_sigma >= 0.0)) throw InputError("KernelSpec: noise_sigma must be >= 0");
}

double group_kernel(const Eigen::Ref<const Eigen::VectorXd>& xa,
                    const Eigen::Ref<const Eigen::VectorXd>& xb, const KernelSpec& spec) {
  if (xa.size() != xb.size()) throw InputError("group_kernel: dimension mismatch");
  if (xa.size() == 0) throw InputError("group_kernel: empty point");
  const double inv = 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
  return spec.scale * std::exp(-(xa - xb).squaredNorm() * inv);
}

Eigen::MatrixXd group_cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                   const Eigen::Ref<const Eigen::MatrixXd>& b,
                                   const KernelSpec& spec) {
  if (a.cols() != b.cols()) throw InputError("group_cross_kernel: dimension mismatch");
  const double inv = 1.0 / (2.0 * spec.bandwidth * spec.bandwidth);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), b.rows());
  for (Eigen::Index d = 0; d < a.cols(); ++d) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      const double bj = b(j, d);
      out.col(j).array() += (a.col(d).array() - bj).square();
    }
  }
  return (spec.scale * (-inv * out.array()).exp()).matrix();
}

Eigen::MatrixXd select_columns(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               std::span<const int> dims) {
  Eigen::MatrixXd out(points.rows(), static_cast<Eigen::Index>(dims.size()));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0 || dims[i] >= points.cols()) throw InputError("select_columns: dimension out of range");
    out.col(static_cast<Eigen::Index>(i)) = points.col(dims[i]);
  }
  return out;
}

DistanceCache::DistanceCache(const Eigen::Ref<const Eigen::MatrixXd>& points, double bandwidth)
    : n_(static_cast<int>(points.rows())), bandwidth_(bandwidth) {
  if (!(bandwidth > 0.0)) throw InputError("DistanceCache: bandwidth must be > 0");
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  per_dim_.reserve(points.cols());
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    Eigen::MatrixXd c(n_, n_);
    for (int t = 0; t < n_; ++t) {
      c.col(t) = (points.col(j).array() - points(t, j)).square() * inv;
      c(t, t) = 0.0;
    }
    per_dim_.push_back(std::move(c));
  }
}

Eigen::MatrixXd group_gram(const DistanceCache& cache, std::span<const int> dims,
                           const KernelSpec& spec) {
  const int n = cache.size();
  if (dims.empty()) return Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd acc = cache.dimension(dims[0]);
  for (std::size_t i = 1; i < dims.size(); ++i) acc += cache.dimension(dims[i]);
  return (spec.scale * (-acc.array()).exp()).matrix();
}

Eigen::MatrixXd gram_matrix(const DistanceCache& cache, const Decomposition& decomp,
                            const KernelSpec& spec) {
  if (cache.dims() != decomp.dims()) throw InputError("gram_matrix: cache and decomposition dims differ");
  const int n = cache.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (const auto& g : decomp.groups())
    if (!g.empty()) k += group_gram(cache, g, spec);
  return k;
}

GroupGramSet::GroupGramSet(const DistanceCache& cache, Decomposition decomp, const KernelSpec& spec)
    : cache_(&cache), spec_(spec), decomp_(std::move(decomp)),
      zero_(Eigen::MatrixXd::Zero(cache.size(), cache.size())) {
  if (cache.dims() != decomp_.dims()) throw InputError("GroupGramSet: cache and decomposition dims differ");
  grams_.resize(decomp_.num_slots());
  auto groups = decomp_.groups();
  for (int m = 0; m < decomp_.num_slots(); ++m)
    if (!groups[m].empty()) grams_[m] = group_gram(cache, groups[m], spec_);
}

const Eigen::MatrixXd& GroupGramSet::group(int m) const {
  const auto& g = grams_.at(m);
  return g.size() == 0 ? zero_ : g;
}

Eigen::MatrixXd GroupGramSet::total() const {
  Eigen::MatrixXd k = zero_;
  for (const auto& g : grams_)
    if (g.size() != 0) k += g;
  return k;
}

void GroupGramSet::move_dimension(int j, int m_from, int m_to) {
  if (decomp_.label(j) != m_from) throw InputError("GroupGramSet::move_dimension: dimension not in m_from");
  if (m_to < 0 || m_to >= decomp_.num_slots()) throw InputError("GroupGramSet::move_dimension: slot out of range");
  if (m_from == m_to) return;
  decomp_.assign(j, m_to);
  for (int m : {m_from, m_to}) {
    auto members = decomp_.group(m);
    if (members.empty())
      grams_[m].resize(0, 0);
    else
      grams_[m] = group_gram(*cache_, members, spec_);
  }
}

}  // namespace addbo
