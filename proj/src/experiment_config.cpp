#include "addbo/experiment_config.hpp"

#include <algorithm>

#include "addbo/errors.hpp"

namespace addbo {

using nlohmann::json;

KernelSpec ExperimentConfig::kernel() const {
  KernelSpec k;
  k.bandwidth = bandwidth;
  k.scale = scale;
  k.noise_sigma = noise_sigma;
  return k;
}

GibbsConfig ExperimentConfig::gibbs(int num_slots, std::uint64_t gibbs_seed) const {
  GibbsConfig g;
  // A single alpha value applies to every slot.
  g.alpha = alpha.size() == 1 ? std::vector<double>(num_slots, alpha.front()) : alpha;
  g.burn_in = burn_in;
  g.total_iters = total_iters;
  g.max_group_size = max_group_size;
  g.seed = gibbs_seed;
  return g;
}

BetaSchedule ExperimentConfig::schedule(int d) const {
  if (beta_mode == "standard") return BetaSchedule::standard();
  if (beta_mode == "scaled") return BetaSchedule::scaled();
  return BetaSchedule::for_dims(d);
}

BatchConfig ExperimentConfig::batch() const {
  BatchConfig b;
  b.batch_size = B;
  b.explorer = explorer;
  b.combiner = combiner;
  b.candidate_pool_size = pool;
  return b;
}

RunConfig ExperimentConfig::run(std::uint64_t run_seed) const {
  RunConfig r;
  r.T = T;
  r.n_init = n_init;
  r.n_cyc = n_cyc;
  r.seed = run_seed;
  r.variant = variant;
  r.acquisition_budget = budget;
  return r;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "D",     "N",         "trials",      "seed",         "seeds",          "jobs",      "T",
      "B",     "Ncyc",      "Ninit",       "variant",      "explorer",       "combiner",  "pool",
      "budget", "burn-in",  "total-iters", "alpha",        "max-group-size", "bandwidth", "scale",
      "noise-sigma", "beta-mode", "grid-points", "features", "out"};
  return keys;
}

namespace {

template <class T>
T field(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

template <class T>
std::vector<T> list_field(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (v.is_array()) return field<std::vector<T>>(doc, key);
  return {field<T>(doc, key)};
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const auto& keys = config_keys();
  for (const auto& [key, _] : doc.items())
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("unknown config field '" + key + "'");

  ExperimentConfig c;
  auto has = [&](const char* k) { return doc.contains(k); };
  if (has("D")) c.dims = list_field<int>(doc, "D");
  if (has("N")) c.samples = list_field<int>(doc, "N");
  if (has("trials")) c.trials = field<int>(doc, "trials");
  if (has("seed")) c.seed = field<std::uint64_t>(doc, "seed");
  if (has("seeds")) c.seeds = field<int>(doc, "seeds");
  if (has("jobs")) c.jobs = field<int>(doc, "jobs");
  if (has("T")) c.T = field<int>(doc, "T");
  if (has("B")) c.B = field<int>(doc, "B");
  if (has("Ncyc")) c.n_cyc = field<int>(doc, "Ncyc");
  if (has("Ninit")) c.n_init = field<int>(doc, "Ninit");
  if (has("variant")) c.variant = parse_variant(field<std::string>(doc, "variant"));
  if (has("explorer")) c.explorer = parse_explorer(field<std::string>(doc, "explorer"));
  if (has("combiner")) {
    c.combiner = parse_combiner(field<std::string>(doc, "combiner"));
    c.combiner_set = true;
  }
  if (has("pool")) c.pool = field<int>(doc, "pool");
  if (has("budget")) c.budget = field<int>(doc, "budget");
  if (has("burn-in")) c.burn_in = field<int>(doc, "burn-in");
  if (has("total-iters")) c.total_iters = field<int>(doc, "total-iters");
  if (has("alpha")) c.alpha = list_field<double>(doc, "alpha");
  if (has("max-group-size") && !doc.at("max-group-size").is_null())
    c.max_group_size = field<int>(doc, "max-group-size");
  if (has("bandwidth")) c.bandwidth = field<double>(doc, "bandwidth");
  if (has("scale")) c.scale = field<double>(doc, "scale");
  if (has("noise-sigma")) c.noise_sigma = field<double>(doc, "noise-sigma");
  if (has("beta-mode")) c.beta_mode = field<std::string>(doc, "beta-mode");
  if (has("grid-points") && !doc.at("grid-points").is_null()) c.grid_points = field<int>(doc, "grid-points");
  if (has("features")) c.features = field<int>(doc, "features");
  if (has("out")) c.out = field<std::string>(doc, "out");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"D", c.dims},
            {"N", c.samples},
            {"trials", c.trials},
            {"seed", c.seed},
            {"seeds", c.seeds},
            {"T", c.T},
            {"B", c.B},
            {"Ncyc", c.n_cyc},
            {"Ninit", c.n_init},
            {"variant", std::string(to_string(c.variant))},
            {"explorer", std::string(to_string(c.explorer))},
            {"pool", c.pool},
            {"budget", c.budget},
            {"burn-in", c.burn_in},
            {"total-iters", c.total_iters},
            {"alpha", c.alpha},
            {"max-group-size", c.max_group_size ? json(*c.max_group_size) : json(nullptr)},
            {"bandwidth", c.bandwidth},
            {"scale", c.scale},
            {"noise-sigma", c.noise_sigma},
            {"beta-mode", c.beta_mode},
            {"grid-points", c.grid_points ? json(*c.grid_points) : json(nullptr)},
            {"features", c.features}};
  if (c.combiner_set || c.explorer != Explorer::rand) j["combiner"] = std::string(to_string(c.combiner));
  return j;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void validate_for_command(const ExperimentConfig& c, const std::string& command) {
  require(command == "recover" || command == "sequential" || command == "batch",
          "unknown command '" + command + "'");
  require(!c.dims.empty(), "D: at least one value required");
  for (int d : c.dims) require(d >= 2, "D: must be >= 2 (got " + std::to_string(d) + ")");
  require(c.seeds >= 1, "seeds: must be >= 1");
  require(c.jobs >= 1, "jobs: must be >= 1");
  require(c.bandwidth > 0.0, "bandwidth: must be > 0");
  require(c.scale > 0.0, "scale: must be > 0");
  require(c.noise_sigma >= 0.0, "noise-sigma: must be >= 0");
  require(c.beta_mode == "auto" || c.beta_mode == "standard" || c.beta_mode == "scaled",
          "beta-mode: expected auto|standard|scaled");
  require(c.features >= 1, "features: must be >= 1");
  require(!c.grid_points || *c.grid_points >= 2, "grid-points: must be >= 2");
  for (int d : c.dims) {
    try {
      c.gibbs(d, 0).validate(d);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("gibbs settings: ") + e.what());
    }
  }
  if (command == "recover") {
    require(!c.samples.empty(), "N: at least one value required");
    for (int n : c.samples) require(n >= 1, "N: must be >= 1");
    require(c.trials >= 1, "trials: must be >= 1");
    return;
  }
  require(c.dims.size() == 1, "D: " + command + " takes a single dimension");
  c.run(c.seed).validate();
  if (command == "batch") {
    c.batch().validate();
    require(!(c.explorer == Explorer::rand && c.combiner_set),
            "combiner: not applicable to the rand explorer");
  }
}

}  // namespace addbo
