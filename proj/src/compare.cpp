#include "addbo/compare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "addbo/errors.hpp"

namespace addbo {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty set");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<CompareRow> compare_runs(const std::vector<LoadedRun>& runs, std::string* warning) {
  if (runs.empty()) throw InputError("compare: no runs given");
  int min_t = runs.front().result.trace.size();
  int max_t = min_t;
  for (const auto& r : runs) {
    min_t = std::min(min_t, r.result.trace.size());
    max_t = std::max(max_t, r.result.trace.size());
  }
  if (warning) warning->clear();
  if (min_t != max_t && warning)
    *warning = "traces have between " + std::to_string(min_t) + " and " + std::to_string(max_t) +
               " rounds; all are cut to " + std::to_string(min_t);

  std::map<std::string, std::vector<const RegretTrace*>> by_method;
  for (const auto& r : runs) by_method[r.result.method].push_back(&r.result.trace);

  std::vector<CompareRow> rows;
  for (const auto& [method, traces] : by_method) {
    for (int t = 0; t < min_t; ++t) {
      std::vector<double> simple, cumulative;
      for (const RegretTrace* tr : traces) {
        simple.push_back(tr->simple()[t]);
        cumulative.push_back(tr->averaged_cumulative()[t]);
      }
      CompareRow row;
      row.method = method;
      row.t = t + 1;
      row.runs = static_cast<int>(traces.size());
      row.median_simple = quantile(simple, 0.5);
      row.iqr_simple = quantile(simple, 0.75) - quantile(simple, 0.25);
      row.median_cumulative = quantile(cumulative, 0.5);
      row.iqr_cumulative = quantile(cumulative, 0.75) - quantile(cumulative, 0.25);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "method,t,runs,median_simple_regret,iqr_simple_regret,median_avg_cumulative_regret,"
        "iqr_avg_cumulative_regret\n";
  for (const auto& r : rows)
    os << r.method << ',' << r.t << ',' << r.runs << ',' << r.median_simple << ',' << r.iqr_simple << ','
       << r.median_cumulative << ',' << r.iqr_cumulative << '\n';
  return os.str();
}

}  // namespace addbo
