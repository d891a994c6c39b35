#pragma once

#include <string>
#include <vector>

#include "addbo/persist.hpp"

namespace addbo {

struct CompareRow {
  std::string method;
  int t = 0;
  int runs = 0;
  double median_simple = 0.0;
  double iqr_simple = 0.0;
  double median_cumulative = 0.0;
  double iqr_cumulative = 0.0;
};

/// Linear-interpolation quantile (q in [0, 1]) of unsorted values.
double quantile(std::vector<double> values, double q);

/// Groups runs by method and reports per-round median and interquartile
/// range of simple and averaged cumulative regret. Traces of different
/// lengths are cut to the shortest; `warning` then explains the cut.
std::vector<CompareRow> compare_runs(const std::vector<LoadedRun>& runs, std::string* warning = nullptr);

std::string compare_csv(const std::vector<CompareRow>& rows);

}  // namespace addbo
