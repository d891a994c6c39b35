#include "addbo/recovery.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "addbo/errors.hpp"
#include "addbo/metrics.hpp"
#include "addbo/persist.hpp"
#include "addbo/random.hpp"
#include "addbo/synthetic.hpp"

namespace addbo {

RecoveryTrial recovery_trial(int dims, int samples, const GibbsConfig& gibbs, const KernelSpec& spec,
                             std::uint64_t seed, int trial) {
  if (samples < 1) throw InputError("recovery_trial: need at least one sample");
  const auto tk = static_cast<std::uint64_t>(trial);
  const SyntheticFunction fn = generate_synthetic(dims, substream_seed(seed, {tk, 0xF00ULL}), spec);
  Rng rng = make_substream(seed, {tk, 0xDA7AULL});
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);
  ObservationSet data;
  data.points = fn.domain().sample_rows(samples, rng);
  data.values.resize(samples);
  for (int i = 0; i < samples; ++i)
    data.values[i] = fn(data.points.row(i).transpose()) + (spec.noise_sigma > 0.0 ? noise(rng) : 0.0);

  GibbsConfig cfg = gibbs;
  cfg.seed = substream_seed(seed, {tk, 0x61BBULL});
  const GibbsResult res = gibbs_sample(data, spec, cfg, Decomposition::fully_partitioned(dims));

  std::vector<double> together, separated, rand;
  for (const auto& z : res.samples) {
    if (auto v = grouped_together_rate(z, fn.truth())) together.push_back(*v);
    if (auto v = separated_rate(z, fn.truth())) separated.push_back(*v);
    rand.push_back(rand_index(z, fn.truth()));
  }
  auto avg = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  RecoveryTrial out;
  out.together = avg(together);
  out.separated = avg(separated);
  out.rand_index = avg(rand).value_or(0.0);
  return out;
}

std::optional<MeanSd> mean_sd(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  MeanSd out;
  out.mean = mean;
  out.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  out.count = static_cast<int>(values.size());
  return out;
}

RecoverySummary summarize_recovery(int dims, int samples, const std::vector<RecoveryTrial>& trials) {
  std::vector<double> together, separated, rand;
  for (const auto& t : trials) {
    if (t.together) together.push_back(*t.together);
    if (t.separated) separated.push_back(*t.separated);
    rand.push_back(t.rand_index);
  }
  RecoverySummary s;
  s.dims = dims;
  s.samples = samples;
  s.trials = static_cast<int>(trials.size());
  s.together = mean_sd(together);
  s.separated = mean_sd(separated);
  s.rand_index = mean_sd(rand);
  return s;
}

RecoverySummary recovery_experiment(int dims, int samples, int trials, const GibbsConfig& gibbs,
                                    const KernelSpec& spec, std::uint64_t seed) {
  if (trials < 1) throw InputError("recovery_experiment: trials must be >= 1");
  std::vector<RecoveryTrial> results;
  for (int i = 0; i < trials; ++i) results.push_back(recovery_trial(dims, samples, gibbs, spec, seed, i));
  return summarize_recovery(dims, samples, results);
}

namespace {

std::string format_cell(const std::optional<MeanSd>& v) {
  if (!v) return "";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v->mean << " ± " << v->sd;
  return os.str();
}

std::string table(const std::vector<RecoverySummary>& cells,
                  std::optional<MeanSd> RecoverySummary::*field) {
  std::set<int> ds, ns;
  std::map<std::pair<int, int>, const RecoverySummary*> lookup;
  for (const auto& c : cells) {
    ds.insert(c.dims);
    ns.insert(c.samples);
    lookup[{c.dims, c.samples}] = &c;
  }
  std::ostringstream os;
  os << "D";
  for (int n : ns) os << ",N=" << n;
  os << "\n";
  for (int d : ds) {
    os << d;
    for (int n : ns) {
      os << ",";
      auto it = lookup.find({d, n});
      if (it != lookup.end()) os << format_cell(it->second->*field);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

void write_recovery_tables(const std::vector<RecoverySummary>& cells, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  write_text_file((base / "together.csv").string(), table(cells, &RecoverySummary::together));
  write_text_file((base / "separated.csv").string(), table(cells, &RecoverySummary::separated));
  write_text_file((base / "rand_index.csv").string(), table(cells, &RecoverySummary::rand_index));
}

}  // namespace addbo
