#pragma once

#include <vector>

namespace addbo {

/// Immediate regrets r~_t with the running simple regret r_t = min r~ and
/// the averaged cumulative regret R_t = mean r~ over rounds 1..t.
class RegretTrace {
 public:
  RegretTrace() = default;
  static RegretTrace from_immediate(const std::vector<double>& immediate);

  void push(double immediate);
  int size() const { return static_cast<int>(immediate_.size()); }
  bool empty() const { return immediate_.empty(); }

  const std::vector<double>& immediate() const { return immediate_; }
  const std::vector<double>& simple() const { return simple_; }
  const std::vector<double>& averaged_cumulative() const { return averaged_; }

  /// Keeps the first `rounds` entries.
  RegretTrace truncated(int rounds) const;

  friend bool operator==(const RegretTrace&, const RegretTrace&) = default;

 private:
  std::vector<double> immediate_;
  std::vector<double> simple_;
  std::vector<double> averaged_;
  double sum_ = 0.0;
};

}  // namespace addbo
