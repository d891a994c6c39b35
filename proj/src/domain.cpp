#include "addbo/domain.hpp"

#include <cmath>
#include <limits>

#include "addbo/errors.hpp"

namespace addbo {

BoxDomain::BoxDomain(Eigen::VectorXd lower, Eigen::VectorXd upper,
                     std::optional<int> grid_points_per_dim)
    : lower_(std::move(lower)), upper_(std::move(upper)), grid_(grid_points_per_dim) {
  if (lower_.size() != upper_.size())
    throw InputError("BoxDomain: lower and upper have different lengths");
  for (Eigen::Index j = 0; j < lower_.size(); ++j)
    if (!(lower_[j] < upper_[j])) throw InputError("BoxDomain: lower must be < upper");
  if (grid_ && *grid_ < 2) throw InputError("BoxDomain: grid_points_per_dim must be >= 2");
}

BoxDomain BoxDomain::unit(int dims, std::optional<int> grid_points_per_dim) {
  return BoxDomain(Eigen::VectorXd::Zero(dims), Eigen::VectorXd::Ones(dims), grid_points_per_dim);
}

BoxDomain BoxDomain::sub_box(std::span<const int> dims) const {
  Eigen::VectorXd lo(dims.size()), hi(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0 || dims[i] >= this->dims()) throw InputError("BoxDomain: dimension out of range");
    lo[i] = lower_[dims[i]];
    hi[i] = upper_[dims[i]];
  }
  return BoxDomain(std::move(lo), std::move(hi), grid_);
}

bool BoxDomain::contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol) const {
  if (x.size() != lower_.size()) return false;
  return ((x.array() >= lower_.array() - tol) && (x.array() <= upper_.array() + tol)).all();
}

Eigen::VectorXd BoxDomain::clamp(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

Eigen::VectorXd BoxDomain::snap(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out = clamp(x);
  if (!grid_) return out;
  const double steps = *grid_ - 1;
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double width = upper_[j] - lower_[j];
    const double idx = std::round((out[j] - lower_[j]) / width * steps);
    out[j] = lower_[j] + width * idx / steps;
  }
  return out;
}

Eigen::VectorXd BoxDomain::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd x(lower_.size());
  for (Eigen::Index j = 0; j < x.size(); ++j)
    x[j] = lower_[j] + (upper_[j] - lower_[j]) * unif(rng);
  return grid_ ? snap(x) : x;
}

Eigen::MatrixXd BoxDomain::sample_rows(int count, Rng& rng) const {
  Eigen::MatrixXd out(count, lower_.size());
  for (int i = 0; i < count; ++i) out.row(i) = sample(rng).transpose();
  return out;
}

std::optional<long> BoxDomain::grid_size(long cap) const {
  if (!grid_) return std::nullopt;
  long total = 1;
  for (int j = 0; j < dims(); ++j) {
    total *= *grid_;
    if (total > cap) return std::nullopt;
  }
  return total;
}

Eigen::MatrixXd BoxDomain::grid_rows() const {
  if (!grid_) throw InputError("BoxDomain: grid_rows on a continuous domain");
  const long total = grid_size(std::numeric_limits<int>::max()).value();
  const int g = *grid_;
  Eigen::MatrixXd out(total, dims());
  for (long r = 0; r < total; ++r) {
    long rem = r;
    for (int j = dims() - 1; j >= 0; --j) {
      const long idx = rem % g;
      rem /= g;
      out(r, j) = lower_[j] + (upper_[j] - lower_[j]) * static_cast<double>(idx) / (g - 1);
    }
  }
  return out;
}

}  // namespace addbo
