#include "addbo/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "addbo/errors.hpp"

namespace addbo {

void GibbsConfig::validate(int num_slots) const {
  if (burn_in < 0) throw ConfigError("gibbs.burn_in must be >= 0");
  if (total_iters <= burn_in) throw ConfigError("gibbs.total_iters must exceed gibbs.burn_in");
  if (!alpha.empty() && static_cast<int>(alpha.size()) != num_slots)
    throw ConfigError("gibbs.alpha must have one entry per group slot (" + std::to_string(num_slots) + ")");
  for (double a : alpha)
    if (!(a > 0.0)) throw ConfigError("gibbs.alpha entries must be > 0");
  if (max_group_size && *max_group_size < 1) throw ConfigError("gibbs.max_group_size must be >= 1");
}

std::vector<double> GibbsConfig::alpha_for(int num_slots) const {
  return alpha.empty() ? std::vector<double>(num_slots, 1.0) : alpha;
}

double log_assignment_prior(std::span<const int> group_sizes, std::span<const double> alpha) {
  if (group_sizes.size() != alpha.size()) throw InputError("log_assignment_prior: size mismatch");
  double sum_alpha = 0.0;
  int dims = 0;
  double acc = 0.0;
  for (std::size_t m = 0; m < alpha.size(); ++m) {
    sum_alpha += alpha[m];
    dims += group_sizes[m];
    acc += std::lgamma(group_sizes[m] + alpha[m]) - std::lgamma(alpha[m]);
  }
  return std::lgamma(sum_alpha) - std::lgamma(dims + sum_alpha) + acc;
}

double decomposition_log_posterior(const ObservationSet& data, const Decomposition& decomp,
                                   const KernelSpec& spec, std::span<const double> alpha) {
  const auto sizes = decomp.group_sizes();
  const double prior = log_assignment_prior(sizes, alpha);
  if (data.empty()) return prior;
  DistanceCache cache(data.points, spec.bandwidth);
  return log_likelihood_from_gram(gram_matrix(cache, decomp, spec), data.values,
                                  spec.noise_variance()) + prior;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Mutable sampler state: current per-group Grams, their sum, and the
/// current log-likelihood (without the n log 2pi constant).
class SweepState {
 public:
  SweepState(const ObservationSet& data, const KernelSpec& spec, const Decomposition& init)
      : y_(data.values), noise_(spec.noise_variance()), spec_(spec),
        cache_(data.points, spec.bandwidth), grams_(cache_, init, spec) {
    k_ = grams_.total();
    current_ll_ = likelihood(k_);
  }

  const Decomposition& decomposition() const { return grams_.decomposition(); }
  double current_log_likelihood() const { return current_ll_; }
  int escalations() const { return escalations_; }

  /// phi over all slots for dimension j, with per-candidate likelihoods in `ll`.
  Eigen::VectorXd conditional(int j, std::span<const double> alpha, std::optional<int> max_size,
                              Eigen::VectorXd& ll) {
    const Decomposition& z = decomposition();
    const int slots = z.num_slots();
    const int from = z.label(j);
    auto sizes = z.group_sizes();
    sizes[from] -= 1;

    std::vector<int> from_rest = z.group(from);
    from_rest.erase(std::find(from_rest.begin(), from_rest.end(), j));
    Eigen::MatrixXd k_minus = k_ - grams_.group(from);
    if (!from_rest.empty()) k_minus += group_gram(cache_, from_rest, spec_);

    const int single[] = {j};
    std::optional<double> singleton_ll;
    if (from_rest.empty()) singleton_ll = current_ll_;

    Eigen::VectorXd phi(slots);
    ll.resize(slots);
    for (int m = 0; m < slots; ++m) {
      if (max_size && sizes[m] + 1 > *max_size) {
        phi[m] = kNegInf;
        ll[m] = kNegInf;
        continue;
      }
      double value;
      if (m == from && !from_rest.empty()) {
        value = current_ll_;
      } else if (sizes[m] == 0) {
        if (!singleton_ll) singleton_ll = likelihood(k_minus + group_gram(cache_, single, spec_));
        value = *singleton_ll;
      } else {
        std::vector<int> joined = z.group(m);
        joined.insert(std::upper_bound(joined.begin(), joined.end(), j), j);
        value = likelihood(k_minus - grams_.group(m) + group_gram(cache_, joined, spec_));
      }
      ll[m] = value;
      phi[m] = value + std::log(sizes[m] + alpha[m]);
    }
    return phi;
  }

  void move(int j, int to, double new_ll) {
    const int from = decomposition().label(j);
    if (from == to) return;
    grams_.move_dimension(j, from, to);
    k_ = grams_.total();
    current_ll_ = new_ll;
  }

 private:
  double likelihood(const Eigen::MatrixXd& k) {
    return log_likelihood_from_gram(k, y_, noise_, false, &escalations_);
  }

  Eigen::VectorXd y_;
  double noise_;
  KernelSpec spec_;
  DistanceCache cache_;
  GroupGramSet grams_;
  Eigen::MatrixXd k_;
  double current_ll_ = 0.0;
  int escalations_ = 0;
};

void check_alpha(std::span<const double> alpha, int slots) {
  if (static_cast<int>(alpha.size()) != slots)
    throw InputError("alpha must have one entry per group slot");
  for (double a : alpha)
    if (!(a > 0.0)) throw InputError("alpha entries must be > 0");
}

}  // namespace

Eigen::VectorXd gibbs_conditional(const ObservationSet& data, const Decomposition& decomp,
                                  const KernelSpec& spec, std::span<const double> alpha, int j,
                                  std::optional<int> max_group_size) {
  if (j < 0 || j >= decomp.dims()) throw InputError("gibbs_conditional: dimension out of range");
  if (data.dims() != decomp.dims()) throw InputError("gibbs_conditional: data and decomposition dims differ");
  check_alpha(alpha, decomp.num_slots());
  if (max_group_size && *max_group_size < 1)
    throw ConfigError("gibbs_conditional: max_group_size must be >= 1");
  SweepState state(data, spec, decomp);
  Eigen::VectorXd ll;
  return state.conditional(j, alpha, max_group_size, ll);
}

int gumbel_argmax(std::span<const double> phi, Rng& rng) {
  int best = -1;
  double best_value = kNegInf;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    // u in the open interval (0, 1)
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    if (phi[i] == kNegInf) continue;
    const double v = phi[i] - std::log(-std::log(u));
    if (best < 0 || v > best_value) {
      best = static_cast<int>(i);
      best_value = v;
    }
  }
  if (best < 0) throw InputError("gumbel_argmax: no finite entry");
  return best;
}

LearningCounters& learning_counters() {
  thread_local LearningCounters counters;
  return counters;
}

GibbsResult gibbs_sample(const ObservationSet& data, const KernelSpec& spec,
                         const GibbsConfig& config, const Decomposition& init,
                         const std::function<void(int, const Decomposition&)>& on_sweep) {
  ++learning_counters().gibbs_runs;
  if (data.empty()) throw InputError("gibbs_sample: no observations");
  if (data.dims() != init.dims()) throw InputError("gibbs_sample: data and decomposition dims differ");
  spec.validate();
  config.validate(init.num_slots());
  if (config.max_group_size && init.max_group_size() > *config.max_group_size)
    throw ConfigError("gibbs_sample: initial decomposition violates max_group_size");
  const auto alpha = config.alpha_for(init.num_slots());

  Rng rng(config.seed);
  SweepState state(data, spec, init);
  const double constant = 0.5 * data.size() * std::log(2.0 * std::numbers::pi);

  GibbsResult result;
  result.samples.reserve(config.total_iters - config.burn_in);
  Eigen::VectorXd ll;
  for (int sweep = 0; sweep < config.total_iters; ++sweep) {
    for (int j = 0; j < init.dims(); ++j) {
      Eigen::VectorXd phi = state.conditional(j, alpha, config.max_group_size, ll);
      const int m = gumbel_argmax(std::span<const double>(phi.data(), phi.size()), rng);
      state.move(j, m, ll[m]);
    }
    if (on_sweep) on_sweep(sweep, state.decomposition());
    if (sweep >= config.burn_in) {
      const double lml = state.current_log_likelihood() - constant;
      result.samples.push_back(state.decomposition());
      result.sample_log_likelihoods.push_back(lml);
      if (result.samples.size() == 1 || lml > result.best_log_likelihood) {
        result.best = state.decomposition();
        result.best_log_likelihood = lml;
      }
    }
  }
  result.jitter_escalations = state.escalations();
  return result;
}

Decomposition partial_learning(const ObservationSet& data, const KernelSpec& spec,
                               int num_candidates, Rng& rng) {
  ++learning_counters().partial_learning_runs;
  if (num_candidates < 1) throw InputError("partial_learning: num_candidates must be >= 1");
  if (data.empty()) throw InputError("partial_learning: no observations");
  const int dims = data.dims();
  DistanceCache cache(data.points, spec.bandwidth);
  std::uniform_int_distribution<int> label(0, dims - 1);
  Decomposition best;
  double best_ll = kNegInf;
  for (int c = 0; c < num_candidates; ++c) {
    std::vector<int> z(dims);
    for (int& v : z) v = label(rng);
    Decomposition candidate(std::move(z));
    const double ll = log_likelihood_from_gram(gram_matrix(cache, candidate, spec), data.values,
                                               spec.noise_variance());
    if (c == 0 || ll > best_ll) {
      best = std::move(candidate);
      best_ll = ll;
    }
  }
  return best;
}

}  // namespace addbo
