#include "addbo/regret.hpp"

#include <algorithm>

namespace addbo {

RegretTrace RegretTrace::from_immediate(const std::vector<double>& immediate) {
  RegretTrace t;
  for (double r : immediate) t.push(r);
  return t;
}

void RegretTrace::push(double immediate) {
  immediate_.push_back(immediate);
  simple_.push_back(simple_.empty() ? immediate : std::min(simple_.back(), immediate));
  sum_ += immediate;
  averaged_.push_back(sum_ / static_cast<double>(immediate_.size()));
}

RegretTrace RegretTrace::truncated(int rounds) const {
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(rounds, 0)), immediate_.size());
  return from_immediate(std::vector<double>(immediate_.begin(), immediate_.begin() + n));
}

}  // namespace addbo
