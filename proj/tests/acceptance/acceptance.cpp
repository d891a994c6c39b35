// Acceptance checks. Each criterion prints exactly one line:
//   criterion <n>: PASS|FAIL (<detail>)
// Usage: addbo_acceptance [n ...]   (no arguments runs all of them)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "addbo/batch.hpp"
#include "addbo/compare.hpp"
#include "addbo/dpp.hpp"
#include "addbo/errors.hpp"
#include "addbo/gibbs.hpp"
#include "addbo/gp.hpp"
#include "addbo/recovery.hpp"
#include "addbo/sequential.hpp"
#include "addbo/synthetic.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace addbo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double median(const std::vector<double>& v) { return quantile(v, 0.5); }

ObservationSet noisy_sample(const SyntheticFunction& fn, int n, Rng& rng, double sigma) {
  ObservationSet data(testing::uniform_points(n, fn.truth().dims(), rng), Eigen::VectorXd(n));
  std::normal_distribution<double> noise(0.0, sigma);
  for (int i = 0; i < n; ++i) data.values[i] = fn(data.points.row(i).transpose()) + noise(rng);
  return data;
}

// The exact posterior over all 27 labelings of a D=3 instance whose truth has
// two groups, compared with the chain's visit frequencies.
Outcome gibbs_tv() {
  const KernelSpec spec;
  std::uint64_t seed = 300;
  SyntheticFunction fn = generate_synthetic(3, seed, spec);
  while (fn.truth().num_nonempty() != 2) fn = generate_synthetic(3, ++seed, spec);
  Rng rng(seed + 1);
  const ObservationSet data = noisy_sample(fn, 10, rng, spec.noise_sigma);

  const std::vector<double> alpha(3, 1.0);
  const auto labelings = oracle::all_labelings(3);
  std::vector<double> exact(labelings.size());
  for (std::size_t i = 0; i < labelings.size(); ++i) {
    const Eigen::MatrixXd k = oracle::gram(data.points, oracle::groups_of(labelings[i]), spec.bandwidth, spec.scale);
    exact[i] = oracle::log_likelihood(k, data.values, spec.noise_variance()) +
               std::log(oracle::assignment_prior(oracle::sizes_of(labelings[i], 3), alpha));
  }
  const double mx = *std::max_element(exact.begin(), exact.end());
  double total = 0.0;
  for (double& v : exact) total += v = std::exp(v - mx);
  for (double& v : exact) v /= total;

  GibbsConfig cfg;
  cfg.alpha = alpha;
  cfg.burn_in = 100;
  cfg.total_iters = cfg.burn_in + 5000;
  cfg.seed = seed + 2;
  std::vector<double> freq(labelings.size(), 0.0);
  int sweep = 0;
  gibbs_sample(data, spec, cfg, Decomposition::fully_partitioned(3), [&](int, const Decomposition& z) {
    if (sweep++ >= cfg.burn_in) freq[z.labeling_index()] += 1.0 / 5000.0;
  });
  const double tv = oracle::total_variation(freq, exact);
  return {tv < 0.05, "TV " + fmt("%.4f", tv) + " < 0.05 over 5000 sweeps"};
}

Outcome recovery_trends() {
  const KernelSpec spec;
  GibbsConfig cfg;
  cfg.burn_in = 50;
  cfg.total_iters = 100;
  struct Cell {
    int d, n;
    bool together;
    double bound;
    bool at_least;
  };
  const std::vector<Cell> cells = {
      {5, 250, true, 0.90, true}, {20, 50, true, 0.20, false}, {10, 450, true, 0.70, true}, {2, 450, false, 0.95, true}};
  bool pass = true;
  std::ostringstream detail;
  for (const Cell& c : cells) {
    cfg.alpha.assign(c.d, 1.0);
    const RecoverySummary s = recovery_experiment(c.d, c.n, 10, cfg, spec, 7);
    const auto& stat = c.together ? s.together : s.separated;
    const double v = stat ? stat->mean : std::nan("");
    const bool ok = stat && (c.at_least ? v >= c.bound : v <= c.bound);
    pass = pass && ok;
    detail << (detail.tellp() ? "; " : "") << "D=" << c.d << " N=" << c.n << (c.together ? " together " : " separated ")
           << fmt("%.3f", v) << (c.at_least ? " >= " : " <= ") << c.bound;
  }
  return {pass, detail.str()};
}

Outcome kdpp_tv() {
  Rng rng(11);
  const Eigen::MatrixXd l = testing::random_psd(6, rng);
  const auto exact = oracle::kdpp_distribution(l, 2);
  std::map<std::vector<int>, double> freq;
  const int draws = 100000;
  const SymmetricEigen eig = clamped_eigen(l);
  for (int i = 0; i < draws; ++i) {
    auto s = kdpp_sample(eig, 2, rng);
    std::sort(s.begin(), s.end());
    freq[s] += 1.0 / draws;
  }
  double tv = 0.0;
  for (const auto& [s, p] : exact) tv += std::abs(p - freq[s]);
  for (const auto& [s, p] : freq)
    if (!exact.count(s)) tv += p;
  tv *= 0.5;
  return {tv < 0.02, "TV " + fmt("%.4f", tv) + " < 0.02 over 100000 draws"};
}

Outcome gumbel() {
  const std::vector<double> phi = {std::log(1.0), std::log(2.0), std::log(3.0)};
  Rng rng(13);
  std::vector<double> freq(3, 0.0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) freq[gumbel_argmax(phi, rng)] += 1.0 / draws;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(freq[i] - (i + 1) / 6.0));
  return {worst <= 0.01, "max deviation " + fmt("%.4f", worst) + " <= 0.01"};
}

Outcome additive_identity() {
  KernelSpec spec;
  spec.bandwidth = 0.3;
  Rng rng(17);
  double worst_mean = 0.0, worst_lml = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const ObservationSet data = testing::random_data(3 + static_cast<int>(rng() % 15), d, rng);
    const Decomposition z = testing::random_decomposition(d, rng);
    const GPState s = GPState::fit(data, z, spec);
    const auto groups = oracle::groups_of(testing::labels(z));
    const Eigen::VectorXd x = testing::uniform_points(1, d, rng).row(0).transpose();
    double sum = 0.0;
    for (int m : z.nonempty_groups()) {
      const auto dims = z.group(m);
      Eigen::VectorXd xm(dims.size());
      for (std::size_t i = 0; i < dims.size(); ++i) xm[i] = x[dims[i]];
      sum += posterior_group(s, m, xm).mean;
    }
    const double full =
        oracle::full_posterior_mean(data.points, data.values, groups, x, spec.bandwidth, spec.scale, spec.noise_variance());
    worst_mean = std::max(worst_mean, std::abs(sum - full));
    const Eigen::MatrixXd k = oracle::gram(data.points, groups, spec.bandwidth, spec.scale);
    worst_lml = std::max(worst_lml,
                         std::abs(log_marginal_likelihood(s) - oracle::log_likelihood(k, data.values, spec.noise_variance())));
  }
  return {worst_mean <= 1e-10 && worst_lml <= 1e-8,
          "mean gap " + fmt("%.2e", worst_mean) + " <= 1e-10, likelihood gap " + fmt("%.2e", worst_lml) + " <= 1e-8"};
}

Outcome regret_ordering() {
  const KernelSpec spec;
  const int dims = 10;
  RunConfig run;
  run.T = 200;
  std::map<Variant, std::vector<double>> finals;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticFunction fn = generate_synthetic(dims, 1000 + seed, spec);
    run.seed = seed;
    for (Variant v : {Variant::gibbs, Variant::np, Variant::fp}) {
      run.variant = v;
      const RunResult r = run_sequential_bo(fn.objective(), fn.domain(), run, {}, spec, BetaSchedule::for_dims(dims));
      finals[v].push_back(r.trace.simple().back());
    }
  }
  const double g = median(finals[Variant::gibbs]), np = median(finals[Variant::np]), fp = median(finals[Variant::fp]);
  return {g <= np && g <= fp,
          "median simple regret Gibbs " + fmt("%.4f", g) + ", NP " + fmt("%.4f", np) + ", FP " + fmt("%.4f", fp)};
}

Outcome batch_ordering() {
  const KernelSpec spec;
  const int dims = 10;
  RunConfig run;
  run.T = 40;
  run.variant = Variant::known;
  struct Method {
    Explorer e;
    Combiner c;
  };
  const std::vector<Method> methods = {{Explorer::pe, Combiner::random},
                                       {Explorer::dpp, Combiner::random},
                                       {Explorer::pe, Combiner::quality},
                                       {Explorer::dpp, Combiner::quality},
                                       {Explorer::rand, Combiner::random}};
  std::map<std::string, std::vector<double>> finals;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticFunction fn = generate_synthetic(dims, 2000 + seed, spec);
    run.seed = seed;
    for (const Method& m : methods) {
      BatchConfig cfg;
      cfg.batch_size = 10;
      cfg.explorer = m.e;
      cfg.combiner = m.c;
      const RunResult r = run_batch_bo(fn.objective(), fn.domain(), cfg, run, {}, spec, BetaSchedule::for_dims(dims));
      finals[cfg.method_name()].push_back(r.trace.simple().back());
    }
  }
  const double rand = median(finals["Rand"]);
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [name, v] : finals) {
    const double med = median(v);
    if (name != "Rand") pass = pass && med < rand;
    detail << (detail.tellp() ? ", " : "median simple regret ") << name << " " << fmt("%.4f", med);
  }
  return {pass, detail.str()};
}

bool is_partition(const Decomposition& z) {
  std::vector<int> seen(z.dims(), 0);
  for (const auto& g : z.groups())
    for (int j : g) ++seen.at(j);
  for (int j = 0; j < z.dims(); ++j)
    if (seen[j] != 1 || z.label(j) < 0 || z.label(j) >= z.num_slots()) return false;
  return true;
}

Outcome invariants() {
  const KernelSpec spec;
  std::map<std::string, long> violations;
  std::map<std::string, long> checks;
  auto record = [&](const std::string& name, bool ok) {
    ++checks[name];
    if (!ok) ++violations[name];
  };

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticFunction fn = generate_synthetic(6, 500 + seed, spec);
    Rng rng(seed);
    const ObservationSet data = noisy_sample(fn, 40, rng, spec.noise_sigma);
    GibbsConfig cfg;
    cfg.burn_in = 10;
    cfg.total_iters = 30;
    cfg.seed = seed;
    if (seed % 2) cfg.max_group_size = 2;
    gibbs_sample(data, spec, cfg, Decomposition::fully_partitioned(6), [&](int, const Decomposition& z) {
      record("partition", is_partition(z) && (!cfg.max_group_size || z.max_group_size() <= *cfg.max_group_size));
    });
  }

  auto check_trace = [&](const RunResult& r) {
    const auto& simple = r.trace.simple();
    const auto& avg = r.trace.averaged_cumulative();
    for (std::size_t t = 0; t < simple.size(); ++t) {
      record("simple regret monotone", t == 0 || simple[t] <= simple[t - 1]);
      record("cumulative dominates simple", avg[t] >= simple[t]);
    }
    for (double f : r.f_values) record("known max bounds f", f <= r.known_max + 1e-9);
  };
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const SyntheticFunction fn = generate_synthetic(4, 600 + seed, spec);
    RunConfig run;
    run.T = 12;
    run.n_init = 4;
    run.n_cyc = 5;
    run.seed = seed;
    run.acquisition_budget = 500;
    GibbsConfig gibbs;
    gibbs.burn_in = 5;
    gibbs.total_iters = 10;
    for (Variant v : {Variant::gibbs, Variant::pl2, Variant::fp}) {
      run.variant = v;
      check_trace(run_sequential_bo(fn.objective(), fn.domain(), run, gibbs, spec, BetaSchedule::standard()));
    }
    run.T = 4;
    for (Explorer e : {Explorer::dpp, Explorer::pe, Explorer::rand}) {
      BatchConfig cfg;
      cfg.batch_size = 4;
      cfg.explorer = e;
      cfg.candidate_pool_size = 64;
      run.variant = Variant::gibbs;
      check_trace(run_batch_bo(fn.objective(), fn.domain(), cfg, run, gibbs, spec, BetaSchedule::standard()));
    }
  }

  Rng rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const int p = 40;
    const Eigen::VectorXd mean = testing::normal_vector(p, rng, 3.0);
    const Eigen::VectorXd sd = testing::normal_vector(p, rng).cwiseAbs();
    const double bt = 0.5 + (rng() % 100) / 25.0;
    const auto r = relevance_region_from_posterior(0, Eigen::MatrixXd::Zero(p, 1), mean, sd, bt, bt * 1.05);
    Eigen::Index arg;
    r.ucb.maxCoeff(&arg);
    record("region holds UCB argmax", r.ucb_argmax == arg && r.mask[r.ucb_argmax]);
  }
  for (int rep = 0; rep < 20; ++rep) {
    const ObservationSet data = testing::random_data(25, 3, rng);
    const Decomposition z = testing::random_decomposition(3, rng);
    const GPState s = GPState::fit(data, z, spec);
    for (int m : z.nonempty_groups()) {
      const auto r = build_relevance_region(s, m, BoxDomain::unit(3), BetaSchedule::standard(), 1 + rep, 128, rng);
      Eigen::Index arg;
      r.ucb.maxCoeff(&arg);
      record("region holds UCB argmax", r.ucb_argmax == arg && r.mask[r.ucb_argmax]);

      const SymmetricEigen e = posterior_group_covariance_eigen(s, m, r.candidates.topRows(20));
      record("PSD clamping", e.values.minCoeff() >= 0.0);
    }
  }

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng r(seed);
    const Decomposition z = testing::random_decomposition(5, r);
    const BoxDomain dom = BoxDomain::unit(5);
    const int k = 2 + static_cast<int>(seed % 5);
    std::vector<GroupSelection> sel;
    for (int m : z.nonempty_groups()) sel.push_back({m, testing::uniform_points(k, z.group_size(m), r)});
    const Eigen::MatrixXd out = combine_random(z, dom, sel, r);
    bool ok = out.rows() == k;
    for (const auto& g : sel) {
      std::vector<std::vector<double>> got, want;
      for (int i = 0; i < k && ok; ++i) {
        got.push_back(oracle::restrict(out, i, z.group(g.group)));
        want.push_back(oracle::restrict(g.points, i, [&] {
          std::vector<int> all(g.points.cols());
          for (int j = 0; j < g.points.cols(); ++j) all[j] = j;
          return all;
        }()));
      }
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ok = ok && got == want;
    }
    record("combine_random multiset", ok);
  }

  for (int rep = 0; rep < 200; ++rep) {
    Eigen::MatrixXd a = testing::random_psd(6, rng);
    const double shift = (rep % 2 ? 5e-7 : 1e-3) * (1.0 + (rng() % 100) / 100.0);
    a -= shift * Eigen::MatrixXd::Identity(6, 6);
    const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff();
    try {
      const SymmetricEigen e = clamped_eigen(a);
      record("PSD clamping", lowest >= -1e-6 && e.values.minCoeff() >= 0.0);
    } catch (const NumericalError&) {
      record("PSD clamping", lowest < -1e-6);
    }
  }

  long total = 0, bad = 0;
  std::ostringstream detail;
  for (const auto& [name, n] : checks) {
    total += n;
    bad += violations[name];
    if (violations[name]) detail << name << ": " << violations[name] << " violations; ";
  }
  detail << bad << " violations in " << total << " checks";
  return {bad == 0, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {gibbs_tv,         recovery_trends, kdpp_tv,
                                                          gumbel,           additive_identity, regret_ordering,
                                                          batch_ordering,   invariants};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

  bool all = true;
  for (int c : selected) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%s; %.1f s)\n", c, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
