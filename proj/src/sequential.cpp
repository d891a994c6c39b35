#include "addbo/sequential.hpp"

#include <exception>
#include <string>

#include "addbo/errors.hpp"
#include "addbo/logging.hpp"

namespace addbo {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::known: return "known";
    case Variant::np: return "np";
    case Variant::fp: return "fp";
    case Variant::pl1: return "pl1";
    case Variant::pl2: return "pl2";
    case Variant::gibbs: return "gibbs";
    case Variant::gibbs_l: return "gibbs-l";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::known, Variant::np, Variant::fp, Variant::pl1, Variant::pl2,
                    Variant::gibbs, Variant::gibbs_l})
    if (to_string(v) == name) return v;
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected known|np|fp|pl1|pl2|gibbs|gibbs-l)");
}

void RunConfig::validate() const {
  if (T < 1) throw ConfigError("T must be >= 1");
  if (n_cyc < 1) throw ConfigError("Ncyc must be >= 1");
  if (n_init < 1) throw ConfigError("Ninit must be >= 1");
  if (acquisition_budget < 1) throw ConfigError("budget must be >= 1");
}

Decomposition learn_decomposition(Variant variant, const ObservationSet& data, const KernelSpec& spec,
                                  const GibbsConfig& gibbs, const std::optional<Decomposition>& truth,
                                  Rng& rng, int* escalations) {
  const int dims = data.dims();
  switch (variant) {
    case Variant::known:
      if (!truth) throw ConfigError("the known variant needs a ground-truth decomposition");
      return *truth;
    case Variant::np:
      return Decomposition::single_group(dims);
    case Variant::fp:
      return Decomposition::fully_partitioned(dims);
    case Variant::pl1:
      return partial_learning(data, spec, gibbs.total_iters - gibbs.burn_in, rng);
    case Variant::pl2:
      return partial_learning(data, spec, 5, rng);
    case Variant::gibbs:
    case Variant::gibbs_l: {
      GibbsConfig cfg = gibbs;
      cfg.seed = rng();
      if (variant == Variant::gibbs_l && !cfg.max_group_size) cfg.max_group_size = 2;
      if (variant == Variant::gibbs) cfg.max_group_size.reset();
      auto result = gibbs_sample(data, spec, cfg, Decomposition::fully_partitioned(dims));
      if (escalations) *escalations += result.jitter_escalations;
      return result.best;
    }
  }
  throw ConfigError("unhandled variant");
}

RunResult run_sequential_bo(const Objective& objective, const BoxDomain& domain, const RunConfig& run,
                            const GibbsConfig& gibbs, const KernelSpec& spec,
                            const BetaSchedule& schedule) {
  run.validate();
  spec.validate();
  gibbs.validate(domain.dims());
  if (run.variant == Variant::known && !objective.truth)
    throw ConfigError("the known variant needs a ground-truth decomposition");
  const LearningCounters before = learning_counters();

  RunResult result;
  result.method = std::string(to_string(run.variant));
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

  try {
    for (int i = 0; i < run.n_init; ++i) observe(domain.sample(design), 0);
    Decomposition decomp;
    for (int t = 1; t <= run.T; ++t) {
      if ((t - 1) % run.n_cyc == 0) {
        Rng learn = make_substream(run.seed, {static_cast<std::uint64_t>(t), 0x1EA2ULL});
        decomp = learn_decomposition(run.variant, result.observations, spec, gibbs, objective.truth,
                                     learn, &result.jitter_escalations);
        result.decompositions.push_back({t, decomp});
        log_debug("t=" + std::to_string(t) + " decomposition " + decomp.to_string());
      }
      const GPState state = GPState::fit(result.observations, decomp, spec);
      result.jitter_escalations += state.chol().escalations();
      const Eigen::VectorXd x =
          select_sequential_point(state, domain, schedule, t, run.acquisition_budget,
                                  substream_seed(run.seed, {0xAC0ULL}));
      const double f = observe(x, t);
      result.trace.push(objective.known_max - f);
      if (run.on_round) {
        result.learning = {learning_counters().gibbs_runs - before.gibbs_runs,
                           learning_counters().partial_learning_runs - before.partial_learning_runs};
        run.on_round(result);
      }
    }
  } catch (const std::exception& e) {
    result.truncated = true;
    result.abort_reason = e.what();
    log_error("run aborted after " + std::to_string(result.trace.size()) + " rounds: " + e.what());
  }
  result.learning = {learning_counters().gibbs_runs - before.gibbs_runs,
                     learning_counters().partial_learning_runs - before.partial_learning_runs};
  if (result.truncated && run.on_round) run.on_round(result);
  return result;
}

}  // namespace addbo
