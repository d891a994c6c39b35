// Command-line driver. Each subcommand runs one kind of experiment or
// summarizes saved runs.

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "addbo/batch.hpp"
#include "addbo/compare.hpp"
#include "addbo/errors.hpp"
#include "addbo/experiment_config.hpp"
#include "addbo/logging.hpp"
#include "addbo/persist.hpp"
#include "addbo/recovery.hpp"
#include "addbo/sequential.hpp"
#include "addbo/synthetic.hpp"

namespace {

using namespace addbo;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4 };

// Raw flag values; only flags the user actually passed override the config file.
struct Flags {
  std::string config_file;
  std::vector<int> dims, samples;
  int trials = 0, seeds = 0, jobs = 0, T = 0, B = 0, n_cyc = 0, n_init = 0, pool = 0, budget = 0;
  int burn_in = 0, total_iters = 0, max_group_size = 0, grid_points = 0, features = 0;
  std::uint64_t seed = 0;
  std::string variant, explorer, combiner, beta_mode, out;
  std::vector<double> alpha;
  double bandwidth = 0, scale = 0, noise_sigma = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool bo) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags given here win")->check(CLI::ExistingFile);
  cmd->add_option("--D", f.dims, bo ? "Input dimension" : "Input dimensions (table rows)");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--jobs", f.jobs, "Worker threads across seeds/trials");
  cmd->add_option("--burn-in", f.burn_in, "Gibbs burn-in sweeps");
  cmd->add_option("--total-iters", f.total_iters, "Gibbs sweeps in total");
  cmd->add_option("--alpha", f.alpha, "Dirichlet concentration (one value or one per slot)");
  cmd->add_option("--max-group-size", f.max_group_size, "Group size limit for Gibbs-L");
  cmd->add_option("--bandwidth", f.bandwidth, "SE kernel bandwidth");
  cmd->add_option("--scale", f.scale, "SE kernel scale");
  cmd->add_option("--noise-sigma", f.noise_sigma, "Observation noise standard deviation");
  cmd->add_option("--features", f.features, "Random features per synthetic group");
  cmd->add_option("--out", f.out, "Output directory");
  if (!bo) {
    cmd->add_option("--N", f.samples, "Observation counts (table columns)");
    cmd->add_option("--trials", f.trials, "Trials per table cell");
    return;
  }
  cmd->add_option("--seeds", f.seeds, "Number of seeds, run as seed, seed+1, ...");
  cmd->add_option("--T", f.T, "Rounds");
  cmd->add_option("--Ncyc", f.n_cyc, "Relearn period");
  cmd->add_option("--Ninit", f.n_init, "Initial random observations");
  cmd->add_option("--variant", f.variant, "gibbs|known|np|fp|pl1|pl2|gibbs-l");
  cmd->add_option("--budget", f.budget, "Random points per acquisition maximization");
  cmd->add_option("--beta-mode", f.beta_mode, "auto|standard|scaled");
  cmd->add_option("--grid-points", f.grid_points, "Discretize every dimension to this many points");
}

ExperimentConfig merge(const CLI::App* cmd, const Flags& f) {
  ExperimentConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw ConfigError("cannot parse " + f.config_file + ": " + e.what());
    }
    c = config_from_json(doc);
  }
  auto given = [&](const char* name) {
    const CLI::Option* o = cmd->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  if (given("--D")) c.dims = f.dims;
  if (given("--N")) c.samples = f.samples;
  if (given("--trials")) c.trials = f.trials;
  if (given("--seed")) c.seed = f.seed;
  if (given("--seeds")) c.seeds = f.seeds;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--T")) c.T = f.T;
  if (given("--B")) c.B = f.B;
  if (given("--Ncyc")) c.n_cyc = f.n_cyc;
  if (given("--Ninit")) c.n_init = f.n_init;
  if (given("--variant")) c.variant = parse_variant(f.variant);
  if (given("--explorer")) c.explorer = parse_explorer(f.explorer);
  if (given("--combiner")) {
    c.combiner = parse_combiner(f.combiner);
    c.combiner_set = true;
  }
  if (given("--pool")) c.pool = f.pool;
  if (given("--budget")) c.budget = f.budget;
  if (given("--burn-in")) c.burn_in = f.burn_in;
  if (given("--total-iters")) c.total_iters = f.total_iters;
  if (given("--alpha")) c.alpha = f.alpha;
  if (given("--max-group-size")) c.max_group_size = f.max_group_size;
  if (given("--bandwidth")) c.bandwidth = f.bandwidth;
  if (given("--scale")) c.scale = f.scale;
  if (given("--noise-sigma")) c.noise_sigma = f.noise_sigma;
  if (given("--beta-mode")) c.beta_mode = f.beta_mode;
  if (given("--grid-points")) c.grid_points = f.grid_points;
  if (given("--features")) c.features = f.features;
  if (given("--out")) c.out = f.out;
  if (c.variant == Variant::gibbs_l && !c.max_group_size) c.max_group_size = 2;
  return c;
}

// Runs task(i) for i in [0, count) on `jobs` threads. Results must be written
// to per-index slots, so the outcome does not depend on scheduling.
void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min(jobs, count));
  std::vector<std::thread> threads;
  for (int i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
}

void write_sidecar(const std::string& path, const std::string& command) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  write_text_file(path, json{{"command", command}, {"finished_unix_time", secs}}.dump(1) + "\n");
}

int cmd_recover(const ExperimentConfig& c) {
  validate_for_command(c, "recover");
  const KernelSpec spec = c.kernel();
  struct Job {
    int d, n, trial;
  };
  std::vector<Job> jobs;
  for (int d : c.dims)
    for (int n : c.samples)
      for (int t = 0; t < c.trials; ++t) jobs.push_back({d, n, t});
  std::vector<RecoveryTrial> results(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), c.jobs, [&](int i) {
    const Job& j = jobs[i];
    const std::uint64_t cell_seed = substream_seed(c.seed, {static_cast<std::uint64_t>(j.d),
                                                            static_cast<std::uint64_t>(j.n)});
    results[i] = recovery_trial(j.d, j.n, c.gibbs(j.d, 0), spec, cell_seed, j.trial);
    log_debug("recover D=" + std::to_string(j.d) + " N=" + std::to_string(j.n) + " trial " +
              std::to_string(j.trial) + " done");
  });
  std::vector<RecoverySummary> cells;
  std::size_t k = 0;
  for (int d : c.dims)
    for (int n : c.samples) {
      std::vector<RecoveryTrial> cell(results.begin() + k, results.begin() + k + c.trials);
      k += c.trials;
      cells.push_back(summarize_recovery(d, n, cell));
    }
  write_recovery_tables(cells, c.out);
  write_text_file((std::filesystem::path(c.out) / "recover-config.json").string(),
                  config_to_json(c).dump(1) + "\n");
  write_sidecar((std::filesystem::path(c.out) / "recover.meta").string(), "recover");
  log_info("wrote recovery tables to " + c.out);
  return kOk;
}

int cmd_bo(const ExperimentConfig& c, bool batch) {
  const std::string command = batch ? "batch" : "sequential";
  validate_for_command(c, command);
  ensure_dir(c.out);
  const int dims = c.dims.front();
  const KernelSpec spec = c.kernel();
  const BoxDomain domain = BoxDomain::unit(dims, c.grid_points);
  const json echo = config_to_json(c);
  std::vector<RunResult> results(c.seeds);

  parallel_for(c.seeds, c.jobs, [&](int s) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(s);
    const SyntheticFunction fn = generate_synthetic(dims, seed, spec, c.features);
    const std::string method = batch ? c.batch().method_name() : std::string(to_string(c.variant));
    const std::string stem =
        (std::filesystem::path(c.out) / (command + "-" + method + "-seed" + std::to_string(seed))).string();
    json run_echo = echo;
    run_echo["seed"] = seed;
    RunConfig run = c.run(seed);
    run.on_round = [&](const RunResult& r) { persist_run(r, run_echo, stem + ".json"); };
    const GibbsConfig gibbs = c.gibbs(dims, 0);
    results[s] = batch ? run_batch_bo(fn.objective(), domain, c.batch(), run, gibbs, spec, c.schedule(dims))
                       : run_sequential_bo(fn.objective(), domain, run, gibbs, spec, c.schedule(dims));
    persist_run(results[s], run_echo, stem + ".json");
    export_trace_csv(results[s].trace, stem + ".csv");
    write_sidecar(stem + ".meta", command);
  });

  int code = kOk;
  for (int s = 0; s < c.seeds; ++s) {
    const RunResult& r = results[s];
    std::cout << r.method << " seed " << c.seed + static_cast<std::uint64_t>(s) << ": rounds " << r.trace.size()
              << ", simple regret " << (r.trace.empty() ? 0.0 : r.trace.simple().back()) << ", gibbs_runs "
              << r.learning.gibbs_runs << ", partial_learning_runs " << r.learning.partial_learning_runs
              << ", jitter_escalations " << r.jitter_escalations << (r.truncated ? " (truncated)" : "") << "\n";
    if (r.truncated) {
      log_error("run aborted: " + r.abort_reason);
      code = kNumerical;
    }
  }
  return code;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& out) {
  std::vector<LoadedRun> runs;
  for (const auto& f : files) runs.push_back(load_run(f));
  std::string warning;
  const auto rows = compare_runs(runs, &warning);
  if (!warning.empty()) log_warn(warning);
  const std::string csv = compare_csv(rows);
  if (out.empty() || out == "-")
    std::cout << csv;
  else
    write_text_file(out, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (!init_logging_from_env()) {
    std::cerr << "ADDBO_LOG must be one of error, info, debug\n";
    return kUsage;
  }
  CLI::App app{"Additive-GP Bayesian optimization with learned decompositions"};
  app.require_subcommand(1);

  Flags rf, sf, bf;
  CLI::App* recover = app.add_subcommand("recover", "Decomposition recovery tables");
  add_common(recover, rf, false);

  CLI::App* sequential = app.add_subcommand("sequential", "Sequential Add-GP-UCB runs");
  add_common(sequential, sf, true);

  CLI::App* batch = app.add_subcommand("batch", "Batched runs with diverse exploration");
  add_common(batch, bf, true);
  batch->add_option("--B", bf.B, "Batch size");
  batch->add_option("--explorer", bf.explorer, "dpp|pe|rand");
  batch->add_option("--combiner", bf.combiner, "random|quality (not with rand)");
  batch->add_option("--pool", bf.pool, "Candidates per relevance region");

  std::vector<std::string> files;
  std::string compare_out;
  CLI::App* compare = app.add_subcommand("compare", "Median and IQR of regret per method and round");
  compare->add_option("runs", files, "Run JSON files")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", compare_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*recover) return cmd_recover(merge(recover, rf));
    if (*sequential) return cmd_bo(merge(sequential, sf), false);
    if (*batch) return cmd_bo(merge(batch, bf), true);
    return cmd_compare(files, compare_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  }
}
