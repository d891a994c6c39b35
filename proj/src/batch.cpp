#include "addbo/batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "addbo/dpp.hpp"
#include "addbo/errors.hpp"
#include "addbo/logging.hpp"

namespace addbo {

std::string_view to_string(Explorer e) {
  switch (e) {
    case Explorer::dpp: return "dpp";
    case Explorer::pe: return "pe";
    case Explorer::rand: return "rand";
  }
  return "?";
}

std::string_view to_string(Combiner c) { return c == Combiner::random ? "random" : "quality"; }

Explorer parse_explorer(std::string_view name) {
  for (Explorer e : {Explorer::dpp, Explorer::pe, Explorer::rand})
    if (to_string(e) == name) return e;
  throw ConfigError("unknown explorer '" + std::string(name) + "' (expected dpp|pe|rand)");
}

Combiner parse_combiner(std::string_view name) {
  for (Combiner c : {Combiner::random, Combiner::quality})
    if (to_string(c) == name) return c;
  throw ConfigError("unknown combiner '" + std::string(name) + "' (expected random|quality)");
}

void BatchConfig::validate() const {
  if (batch_size < 2) throw ConfigError("B must be >= 2");
  if (candidate_pool_size < batch_size - 1) throw ConfigError("pool must be >= B - 1");
}

std::string BatchConfig::method_name() const {
  if (explorer == Explorer::rand) return "Rand";
  std::string name = explorer == Explorer::dpp ? "Batch-UCB-DPP" : "Batch-UCB-PE";
  if (combiner == Combiner::quality) name += "-Fnc";
  return name;
}

std::vector<int> RelevanceRegion::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(static_cast<int>(i));
  return out;
}

int RelevanceRegion::size() const {
  return static_cast<int>(std::count(mask.begin(), mask.end(), 1));
}

RelevanceRegion relevance_region_from_posterior(int group, Eigen::MatrixXd candidates,
                                                const Eigen::Ref<const Eigen::VectorXd>& mean,
                                                const Eigen::Ref<const Eigen::VectorXd>& sd,
                                                double beta_t, double beta_next) {
  const Eigen::Index p = candidates.rows();
  if (mean.size() != p || sd.size() != p) throw InputError("relevance region: size mismatch");
  if (p < 1) throw InputError("relevance region: empty candidate pool");
  if (!(beta_t >= 0.0) || !(beta_next >= 0.0)) throw InputError("relevance region: beta must be >= 0");
  RelevanceRegion r;
  r.group = group;
  r.candidates = std::move(candidates);
  r.ucb = mean + std::sqrt(beta_t) * sd;
  r.lcb = mean - std::sqrt(beta_t) * sd;
  const double best_lcb = r.lcb.maxCoeff();
  Eigen::Index arg = 0;
  r.ucb.maxCoeff(&arg);
  r.ucb_argmax = static_cast<int>(arg);
  r.mask.assign(p, 0);
  const double width = 2.0 * std::sqrt(beta_next);
  for (Eigen::Index i = 0; i < p; ++i)
    r.mask[i] = mean[i] + width * sd[i] >= best_lcb ? 1 : 0;
  r.mask[r.ucb_argmax] = 1;
  return r;
}

RelevanceRegion build_relevance_region(const GPState& state, int m, const BoxDomain& domain,
                                       const BetaSchedule& schedule, int t, int pool_size, Rng& rng) {
  if (pool_size < 1) throw InputError("build_relevance_region: pool_size must be >= 1");
  const auto dims = state.decomposition().group(m);
  if (dims.empty()) throw InputError("build_relevance_region: group " + std::to_string(m) + " is empty");
  const BoxDomain box = domain.sub_box(dims);
  Eigen::MatrixXd candidates;
  if (box.discrete() && box.grid_size(pool_size))
    candidates = box.grid_rows();
  else
    candidates = box.sample_rows(pool_size, rng);
  const auto post = posterior_group_batch(state, m, candidates);
  const int size = static_cast<int>(dims.size());
  return relevance_region_from_posterior(m, std::move(candidates), post.mean, post.variance.cwiseSqrt(),
                                         schedule.beta(size, t), schedule.beta(size, t + 1));
}

std::vector<int> exploration_ground_set(const RelevanceRegion& region, int k) {
  std::vector<int> ground = region.members();
  if (static_cast<int>(ground.size()) >= k) return ground;
  std::vector<int> rest;
  for (std::size_t i = 0; i < region.mask.size(); ++i)
    if (!region.mask[i]) rest.push_back(static_cast<int>(i));
  std::stable_sort(rest.begin(), rest.end(),
                   [&](int a, int b) { return region.ucb[a] > region.ucb[b]; });
  for (int i : rest) {
    if (static_cast<int>(ground.size()) >= k) break;
    ground.push_back(i);
  }
  if (static_cast<int>(ground.size()) < k)
    throw InputError("exploration ground set: pool smaller than k = " + std::to_string(k));
  std::sort(ground.begin(), ground.end());
  return ground;
}

namespace {

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

std::vector<int> pe_over(const GPState& state, int m, const RelevanceRegion& region,
                         const std::vector<int>& ground, int k) {
  const Eigen::MatrixXd cov = posterior_group_covariance(state, m, rows_of(region.candidates, ground));
  std::vector<int> picks = greedy_logdet_select(cov, k);
  for (int& p : picks) p = ground[p];
  return picks;
}

std::vector<int> dpp_over(const GPState& state, int m, const RelevanceRegion& region,
                          const std::vector<int>& ground, int k, Rng& rng) {
  SymmetricEigen eig = posterior_group_covariance_eigen(state, m, rows_of(region.candidates, ground));
  const long positive = (eig.values.array() > 0.0).count();
  if (positive < k) {
    // Rank-deficient ground set: a small ridge keeps the k-DPP proper.
    const double ridge = 1e-10 * std::max(eig.values.maxCoeff(), state.spec().scale);
    eig.values.array() += ridge;
  }
  std::vector<int> picks = kdpp_sample(eig, k, rng);
  for (int& p : picks) p = ground[p];
  return picks;
}

void check_k(const RelevanceRegion& region, int k) {
  if (k < 1) throw InputError("diverse selection: k must be >= 1");
  if (region.size() < k)
    throw InputError("diverse selection: region has " + std::to_string(region.size()) +
                     " members, fewer than k = " + std::to_string(k));
}

}  // namespace

std::vector<int> pe_greedy_select(const GPState& state, int m, const RelevanceRegion& region, int k) {
  check_k(region, k);
  return pe_over(state, m, region, region.members(), k);
}

std::vector<int> dpp_select(const GPState& state, int m, const RelevanceRegion& region, int k, Rng& rng) {
  check_k(region, k);
  return dpp_over(state, m, region, region.members(), k, rng);
}

namespace {

int common_count(const Decomposition& decomp, const BoxDomain& domain,
                 const std::vector<GroupSelection>& selections) {
  if (decomp.dims() != domain.dims()) throw InputError("combine: decomposition and domain dims differ");
  if (selections.empty()) throw InputError("combine: no group selections");
  const Eigen::Index k = selections.front().points.rows();
  for (const auto& s : selections) {
    const auto dims = decomp.group(s.group);
    if (dims.empty()) throw InputError("combine: selection for empty group " + std::to_string(s.group));
    if (s.points.rows() != k) throw InputError("combine: groups selected different numbers of points");
    if (s.points.cols() != static_cast<Eigen::Index>(dims.size()))
      throw InputError("combine: selection width differs from group size");
  }
  if (k < 1) throw InputError("combine: empty selections");
  return static_cast<int>(k);
}

Eigen::MatrixXd random_fill(const BoxDomain& domain, int k, Rng& rng) {
  return domain.sample_rows(k, rng);
}

void place(Eigen::MatrixXd& out, int row, const std::vector<int>& dims,
           const Eigen::Ref<const Eigen::RowVectorXd>& sub) {
  for (std::size_t i = 0; i < dims.size(); ++i) out(row, dims[i]) = sub[static_cast<Eigen::Index>(i)];
}

}  // namespace

Eigen::MatrixXd combine_random(const Decomposition& decomp, const BoxDomain& domain,
                               const std::vector<GroupSelection>& selections, Rng& rng) {
  const int k = common_count(decomp, domain, selections);
  Eigen::MatrixXd out = random_fill(domain, k, rng);
  for (const auto& s : selections) {
    const auto dims = decomp.group(s.group);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < k; ++i) place(out, i, dims, s.points.row(perm[i]));
  }
  return out;
}

Eigen::MatrixXd combine_by_quality(const Decomposition& decomp, const BoxDomain& domain,
                                   const std::vector<GroupSelection>& selections,
                                   const std::vector<Eigen::VectorXd>& quality, Rng& rng) {
  const int k = common_count(decomp, domain, selections);
  if (quality.size() != selections.size()) throw InputError("combine: one quality vector per group required");
  Eigen::MatrixXd out = random_fill(domain, k, rng);
  for (std::size_t g = 0; g < selections.size(); ++g) {
    const auto& s = selections[g];
    if (quality[g].size() != k) throw InputError("combine: quality length differs from selection");
    const auto dims = decomp.group(s.group);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    // Repeated argmax-and-remove is a stable descending sort.
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return quality[g][a] > quality[g][b]; });
    for (int i = 0; i < k; ++i) place(out, i, dims, s.points.row(order[i]));
  }
  return out;
}

Eigen::MatrixXd combine_quality(const Decomposition& decomp, const BoxDomain& domain,
                                const std::vector<GroupSelection>& selections, const GPState& state,
                                const BetaSchedule& schedule, int t, Rng& rng) {
  std::vector<Eigen::VectorXd> quality;
  for (const auto& s : selections)
    quality.push_back(ucb_batch(state, s.group, s.points, schedule.beta(decomp.group_size(s.group), t)));
  return combine_by_quality(decomp, domain, selections, quality, rng);
}

RunResult run_batch_bo(const Objective& objective, const BoxDomain& domain, const BatchConfig& config,
                       const RunConfig& run, const GibbsConfig& gibbs, const KernelSpec& spec,
                       const BetaSchedule& schedule) {
  config.validate();
  run.validate();
  spec.validate();
  gibbs.validate(domain.dims());
  if (run.variant == Variant::known && !objective.truth)
    throw ConfigError("the known variant needs a ground-truth decomposition");
  const LearningCounters before = learning_counters();
  const int k = config.batch_size - 1;

  RunResult result;
  result.method = config.method_name();
  result.known_max = objective.known_max;
  result.observations.points.resize(0, domain.dims());

  Rng design = make_substream(run.seed, {0xD35ULL});
  Rng noise = make_substream(run.seed, {0x0015EULL});
  std::normal_distribution<double> gauss(0.0, spec.noise_sigma);
  auto observe = [&](const Eigen::VectorXd& x, int round) {
    const double f = objective.f(x);
    result.observations.append(x, f + (spec.noise_sigma > 0.0 ? gauss(noise) : 0.0));
    result.f_values.push_back(f);
    result.rounds.push_back(round);
    return f;
  };
  auto relearn = [&](int t) {
    Rng learn = make_substream(run.seed, {static_cast<std::uint64_t>(t), 0x1EA2ULL});
    Decomposition d = learn_decomposition(run.variant, result.observations, spec, gibbs, objective.truth,
                                          learn, &result.jitter_escalations);
    result.decompositions.push_back({t, d});
    return d;
  };

  try {
    for (int i = 0; i < run.n_init; ++i) observe(domain.sample(design), 0);
    Decomposition decomp;
    if (config.explorer != Explorer::rand) decomp = relearn(0);
    for (int t = 1; t <= run.T; ++t) {
      const auto tk = static_cast<std::uint64_t>(t);
      Eigen::MatrixXd batch(config.batch_size, domain.dims());
      if (config.explorer == Explorer::rand) {
        Rng rng = make_substream(run.seed, {tk, 0x2A4DULL});
        batch = domain.sample_rows(config.batch_size, rng);
      } else {
        if (t % run.n_cyc == 0) decomp = relearn(t);
        const GPState state = GPState::fit(result.observations, decomp, spec);
        result.jitter_escalations += state.chol().escalations();
        batch.row(0) = select_sequential_point(state, domain, schedule, t, run.acquisition_budget,
                                               substream_seed(run.seed, {0xAC0ULL}))
                           .transpose();
        std::vector<GroupSelection> selections;
        for (int m : decomp.nonempty_groups()) {
          Rng rng = make_substream(run.seed, {tk, static_cast<std::uint64_t>(m), 0xE8B1ULL});
          const RelevanceRegion region =
              build_relevance_region(state, m, domain, schedule, t, config.candidate_pool_size, rng);
          const std::vector<int> ground = exploration_ground_set(region, k);
          const std::vector<int> picks = config.explorer == Explorer::dpp
                                             ? dpp_over(state, m, region, ground, k, rng)
                                             : pe_over(state, m, region, ground, k);
          selections.push_back({m, rows_of(region.candidates, picks)});
        }
        Rng comb = make_substream(run.seed, {tk, 0xC0B1ULL});
        batch.bottomRows(k) = config.combiner == Combiner::random
                                  ? combine_random(decomp, domain, selections, comb)
                                  : combine_quality(decomp, domain, selections, state, schedule, t, comb);
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < config.batch_size; ++b)
        best = std::max(best, observe(batch.row(b).transpose(), t));
      result.trace.push(objective.known_max - best);
      if (run.on_round) {
        result.learning = {learning_counters().gibbs_runs - before.gibbs_runs,
                           learning_counters().partial_learning_runs - before.partial_learning_runs};
        run.on_round(result);
      }
    }
  } catch (const std::exception& e) {
    result.truncated = true;
    result.abort_reason = e.what();
    log_error("batch run aborted after " + std::to_string(result.trace.size()) + " rounds: " + e.what());
  }
  result.learning = {learning_counters().gibbs_runs - before.gibbs_runs,
                     learning_counters().partial_learning_runs - before.partial_learning_runs};
  if (result.truncated && run.on_round) run.on_round(result);
  return result;
}

}  // namespace addbo
