#include "addbo/gp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "addbo/errors.hpp"

namespace addbo {

ObservationSet::ObservationSet(Eigen::MatrixXd pts, Eigen::VectorXd vals)
    : points(std::move(pts)), values(std::move(vals)) {
  if (points.rows() != values.size())
    throw InputError("ObservationSet: points and values have different lengths");
}

void ObservationSet::append(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  if (points.rows() > 0 && x.size() != points.cols())
    throw InputError("ObservationSet::append: dimension mismatch");
  const Eigen::Index n = points.rows();
  points.conservativeResize(n + 1, x.size());
  points.row(n) = x.transpose();
  values.conservativeResize(n + 1);
  values[n] = y;
}

void ObservationSet::validate(const BoxDomain& domain) const {
  if (points.rows() != values.size())
    throw InputError("ObservationSet: points and values have different lengths");
  if (points.rows() > 0 && points.cols() != domain.dims())
    throw InputError("ObservationSet: dimension differs from domain");
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    if (!domain.contains(points.row(i).transpose(), 1e-12))
      throw InputError("ObservationSet: point " + std::to_string(i) + " outside domain");
}

JitteredCholesky::JitteredCholesky(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  llt_.compute(a);
  if (llt_.info() == Eigen::Success) return;
  const Eigen::Index n = a.rows();
  for (double jitter : kJitterLadder) {
    ++escalations_;
    jitter_ = jitter;
    Eigen::MatrixXd shifted = a;
    shifted.diagonal().array() += jitter;
    llt_.compute(shifted);
    if (llt_.info() == Eigen::Success) return;
  }
  throw NumericalError("Cholesky failed for " + std::to_string(n) + "x" + std::to_string(n) +
                           " matrix after jitter " + std::to_string(jitter_),
                       jitter_);
}

void JitteredCholesky::solve_lower_in_place(Eigen::Ref<Eigen::MatrixXd> b) const {
  llt_.matrixL().solveInPlace(b);
}

double JitteredCholesky::log_det() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

double log_likelihood_from_gram(const Eigen::Ref<const Eigen::MatrixXd>& gram,
                                const Eigen::Ref<const Eigen::VectorXd>& y,
                                double noise_variance, bool include_constant, int* escalations) {
  const Eigen::Index n = y.size();
  if (gram.rows() != n || gram.cols() != n) throw InputError("log_likelihood_from_gram: size mismatch");
  if (n == 0) return 0.0;
  Eigen::MatrixXd a = gram;
  a.diagonal().array() += noise_variance;
  JitteredCholesky chol(a);
  if (escalations) *escalations += chol.escalations();
  Eigen::VectorXd v = y;
  chol.solve_lower_in_place(v);
  double ll = -0.5 * (v.squaredNorm() + chol.log_det());
  if (include_constant) ll -= 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return ll;
}

GPState GPState::fit(const ObservationSet& data, const Decomposition& decomp, const KernelSpec& spec) {
  spec.validate();
  if (data.points.rows() != data.values.size())
    throw InputError("GPState::fit: points and values have different lengths");
  if (!data.empty() && data.dims() != decomp.dims())
    throw InputError("GPState::fit: data and decomposition dims differ");
  GPState s;
  s.points_ = data.points;
  s.y_ = data.values;
  s.decomp_ = decomp;
  s.spec_ = spec;
  if (data.empty()) {
    s.points_.resize(0, decomp.dims());
    return s;
  }
  DistanceCache cache(data.points, spec.bandwidth);
  s.gram_ = gram_matrix(cache, decomp, spec);
  Eigen::MatrixXd a = s.gram_;
  a.diagonal().array() += spec.noise_variance();
  s.chol_ = JitteredCholesky(a);
  s.alpha_ = s.chol_.solve(s.y_);
  return s;
}

Eigen::MatrixXd GPState::group_points(int m) const {
  return select_columns(points_, decomp_.group(m));
}

double log_marginal_likelihood(const GPState& state) {
  const int n = state.size();
  if (n == 0) return 0.0;
  Eigen::VectorXd v = state.values();
  state.chol().solve_lower_in_place(v);
  return -0.5 * (v.squaredNorm() + state.chol().log_det() +
                 static_cast<double>(n) * std::log(2.0 * std::numbers::pi));
}

PosteriorPoint prior_group(const KernelSpec& spec) { return {0.0, spec.scale}; }

namespace {

std::vector<int> require_group(const GPState& state, int m) {
  if (m < 0 || m >= state.decomposition().num_slots())
    throw InputError("posterior: group index out of range");
  auto dims = state.decomposition().group(m);
  if (dims.empty()) throw InputError("posterior: group " + std::to_string(m) + " is empty");
  return dims;
}

double clamp_variance(double raw) {
  if (raw < -1e-8)
    throw NumericalError("posterior variance " + std::to_string(raw) + " below -1e-8");
  return raw < 0.0 ? 0.0 : raw;
}

}  // namespace

PosteriorBatch posterior_group_batch(const GPState& state, int m,
                                     const Eigen::Ref<const Eigen::MatrixXd>& points) {
  auto dims = require_group(state, m);
  if (points.cols() != static_cast<Eigen::Index>(dims.size()))
    throw InputError("posterior: point dimension differs from group size");
  const Eigen::Index p = points.rows();
  PosteriorBatch out;
  out.mean = Eigen::VectorXd::Zero(p);
  out.variance = Eigen::VectorXd::Constant(p, state.spec().scale);
  if (state.size() == 0 || p == 0) return out;

  const Eigen::MatrixXd train = state.group_points(m);
  constexpr Eigen::Index kChunk = 1024;
  for (Eigen::Index start = 0; start < p; start += kChunk) {
    const Eigen::Index len = std::min(kChunk, p - start);
    Eigen::MatrixXd kx = group_cross_kernel(train, points.middleRows(start, len), state.spec());
    out.mean.segment(start, len).noalias() = kx.transpose() * state.alpha();
    state.chol().solve_lower_in_place(kx);
    out.variance.segment(start, len).array() -= kx.colwise().squaredNorm().transpose().array();
  }
  for (Eigen::Index i = 0; i < p; ++i) out.variance[i] = clamp_variance(out.variance[i]);
  return out;
}

PosteriorPoint posterior_group(const GPState& state, int m,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::MatrixXd row = x.transpose();
  auto b = posterior_group_batch(state, m, row);
  return {b.mean[0], b.variance[0]};
}

namespace {

Eigen::MatrixXd raw_posterior_covariance(const GPState& state, int m,
                                         const Eigen::Ref<const Eigen::MatrixXd>& points) {
  auto dims = require_group(state, m);
  if (points.cols() != static_cast<Eigen::Index>(dims.size()))
    throw InputError("posterior covariance: point dimension differs from group size");
  if (points.rows() < 1) throw InputError("posterior covariance: need at least one point");
  Eigen::MatrixXd cov = group_cross_kernel(points, points, state.spec());
  if (state.size() > 0) {
    Eigen::MatrixXd v = group_cross_kernel(state.group_points(m), points, state.spec());
    state.chol().solve_lower_in_place(v);
    cov.noalias() -= v.transpose() * v;
  }
  return 0.5 * (cov + cov.transpose());
}

}  // namespace

SymmetricEigen clamped_eigen(const Eigen::Ref<const Eigen::MatrixXd>& sym, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  SymmetricEigen out{es.eigenvalues(), es.eigenvectors()};
  if (out.values.size() > 0 && out.values[0] < -tolerance)
    throw NumericalError("covariance eigenvalue " + std::to_string(out.values[0]) +
                         " below -" + std::to_string(tolerance));
  out.values = out.values.cwiseMax(0.0);
  return out;
}

SymmetricEigen posterior_group_covariance_eigen(const GPState& state, int m,
                                                const Eigen::Ref<const Eigen::MatrixXd>& points) {
  return clamped_eigen(raw_posterior_covariance(state, m, points));
}

Eigen::MatrixXd posterior_group_covariance(const GPState& state, int m,
                                           const Eigen::Ref<const Eigen::MatrixXd>& points) {
  Eigen::MatrixXd cov = raw_posterior_covariance(state, m, points);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition failed");
  const double lo = es.eigenvalues().size() ? es.eigenvalues()[0] : 0.0;
  if (lo < -1e-6)
    throw NumericalError("covariance eigenvalue " + std::to_string(lo) + " below -1e-6");
  if (lo >= 0.0) return cov;
  Eigen::MatrixXd out = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                        es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace addbo
