#include "addbo/acquisition.hpp"

#include <cmath>
#include <string>

#include "addbo/errors.hpp"

namespace addbo {

double BetaSchedule::beta(int group_size, int t) const {
  if (t < 1) throw InputError("BetaSchedule: t must be >= 1");
  if (group_size < 1) throw InputError("BetaSchedule: group size must be >= 1");
  if (!(divisor > 0.0)) throw InputError("BetaSchedule: divisor must be > 0");
  return group_size * std::log(2.0 * t) / divisor;
}

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0)) throw InputError("acquisition: beta must be >= 0");
}

}  // namespace

double ucb(const GPState& state, int m, const Eigen::Ref<const Eigen::VectorXd>& x, double beta) {
  check_beta(beta);
  const auto p = posterior_group(state, m, x);
  return p.mean + std::sqrt(beta) * std::sqrt(p.variance);
}

double lcb(const GPState& state, int m, const Eigen::Ref<const Eigen::VectorXd>& x, double beta) {
  check_beta(beta);
  const auto p = posterior_group(state, m, x);
  return p.mean - std::sqrt(beta) * std::sqrt(p.variance);
}

Eigen::VectorXd ucb_batch(const GPState& state, int m,
                          const Eigen::Ref<const Eigen::MatrixXd>& points, double beta) {
  check_beta(beta);
  const auto p = posterior_group_batch(state, m, points);
  return p.mean + std::sqrt(beta) * p.variance.cwiseSqrt();
}

namespace {

constexpr double kFiniteDiffStep = 1e-5;
constexpr int kMaxAscentSteps = 100;
constexpr int kMaxHalvings = 40;

double eval_one(const BatchObjective& objective, const Eigen::VectorXd& x) {
  Eigen::MatrixXd row = x.transpose();
  return objective(row)[0];
}

Eigen::VectorXd central_gradient(const BatchObjective& objective, const BoxDomain& box,
                                 const Eigen::VectorXd& x) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd probes(2 * d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += kFiniteDiffStep;
    xm[i] -= kFiniteDiffStep;
    probes.row(2 * i) = box.clamp(xp).transpose();
    probes.row(2 * i + 1) = box.clamp(xm).transpose();
  }
  const Eigen::VectorXd f = objective(probes);
  Eigen::VectorXd g(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double span = probes(2 * i, i) - probes(2 * i + 1, i);
    g[i] = span > 0.0 ? (f[2 * i] - f[2 * i + 1]) / span : 0.0;
  }
  return g;
}

}  // namespace

AcquisitionOptimum maximize_in_box(const BatchObjective& objective, const BoxDomain& box,
                                   int budget, Rng& rng) {
  if (budget < 1) throw InputError("maximize_in_box: budget must be >= 1");
  AcquisitionOptimum best;
  constexpr int kChunk = 2048;
  bool have = false;
  for (int start = 0; start < budget; start += kChunk) {
    const int len = std::min(kChunk, budget - start);
    const Eigen::MatrixXd cand = box.sample_rows(len, rng);
    const Eigen::VectorXd vals = objective(cand);
    for (int i = 0; i < len; ++i) {
      if (!have || vals[i] > best.value) {
        have = true;
        best.value = vals[i];
        best.x = cand.row(i).transpose();
      }
    }
  }
  best.best_random_value = best.value;
  if (box.discrete()) return best;

  // The step is a length in input units along the normalized gradient; it
  // doubles after a successful move and halves after a failed one.
  const double min_width = (box.upper() - box.lower()).minCoeff();
  double radius = 0.1 * min_width;
  const double min_radius = 1e-12 * min_width;
  for (int it = 0; it < kMaxAscentSteps; ++it) {
    const Eigen::VectorXd g = central_gradient(objective, box, best.x);
    const double gmax = g.cwiseAbs().maxCoeff();
    if (!(gmax > 0.0)) break;
    const Eigen::VectorXd dir = g / gmax;
    bool improved = false;
    for (int h = 0; h < kMaxHalvings && radius >= min_radius; ++h) {
      const Eigen::VectorXd trial = box.clamp(best.x + radius * dir);
      const double v = eval_one(objective, trial);
      if (v > best.value) {
        best.x = trial;
        best.value = v;
        improved = true;
        break;
      }
      radius *= 0.5;
    }
    if (!improved) break;
    radius = std::min(2.0 * radius, min_width);
  }
  return best;
}

AcquisitionOptimum optimize_group_acquisition(const GPState& state, int m, const BoxDomain& domain,
                                              double beta, int budget, Rng& rng) {
  check_beta(beta);
  const auto dims = state.decomposition().group(m);
  if (dims.empty()) throw InputError("optimize_group_acquisition: group " + std::to_string(m) + " is empty");
  const BoxDomain box = domain.sub_box(dims);
  BatchObjective objective = [&](const Eigen::Ref<const Eigen::MatrixXd>& pts) {
    return ucb_batch(state, m, pts, beta);
  };
  return maximize_in_box(objective, box, budget, rng);
}

Eigen::VectorXd select_sequential_point(const Decomposition& decomp, const BoxDomain& domain,
                                        const std::function<BatchObjective(int)>& objective_for,
                                        int budget, std::uint64_t seed, int t) {
  if (decomp.dims() != domain.dims()) throw InputError("select_sequential_point: dims mismatch");
  Rng fill = make_substream(seed, {static_cast<std::uint64_t>(t), 0xF111ULL});
  Eigen::VectorXd x = domain.sample(fill);
  for (int m : decomp.nonempty_groups()) {
    const auto dims = decomp.group(m);
    Rng rng = make_substream(seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m)});
    const auto opt = maximize_in_box(objective_for(m), domain.sub_box(dims), budget, rng);
    for (std::size_t i = 0; i < dims.size(); ++i) x[dims[i]] = opt.x[static_cast<Eigen::Index>(i)];
  }
  return x;
}

Eigen::VectorXd select_sequential_point(const GPState& state, const BoxDomain& domain,
                                        const BetaSchedule& schedule, int t, int budget,
                                        std::uint64_t seed) {
  const Decomposition& decomp = state.decomposition();
  auto objective_for = [&](int m) -> BatchObjective {
    const double beta = schedule.beta(decomp.group_size(m), t);
    return [&state, m, beta](const Eigen::Ref<const Eigen::MatrixXd>& pts) {
      return ucb_batch(state, m, pts, beta);
    };
  };
  return select_sequential_point(decomp, domain, objective_for, budget, seed, t);
}

}  // namespace addbo
