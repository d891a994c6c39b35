#include "addbo/metrics.hpp"

#include "addbo/errors.hpp"

namespace addbo {

namespace {

struct PairCounts {
  long agree_together = 0;
  long agree_apart = 0;
  long truth_together = 0;
  long truth_apart = 0;
};

PairCounts count_pairs(const Decomposition& z, const Decomposition& truth) {
  if (z.dims() != truth.dims()) throw InputError("pair metrics: decompositions differ in length");
  if (z.dims() < 2) throw InputError("pair metrics: need at least two dimensions");
  PairCounts c;
  for (int i = 0; i < z.dims(); ++i) {
    for (int j = i + 1; j < z.dims(); ++j) {
      const bool t = truth.label(i) == truth.label(j);
      const bool s = z.label(i) == z.label(j);
      if (t) {
        ++c.truth_together;
        if (s) ++c.agree_together;
      } else {
        ++c.truth_apart;
        if (!s) ++c.agree_apart;
      }
    }
  }
  return c;
}

}  // namespace

double rand_index(const Decomposition& z, const Decomposition& truth) {
  const auto c = count_pairs(z, truth);
  return static_cast<double>(c.agree_together + c.agree_apart) /
         static_cast<double>(c.truth_together + c.truth_apart);
}

std::optional<double> grouped_together_rate(const Decomposition& z, const Decomposition& truth) {
  const auto c = count_pairs(z, truth);
  if (c.truth_together == 0) return std::nullopt;
  return static_cast<double>(c.agree_together) / static_cast<double>(c.truth_together);
}

std::optional<double> separated_rate(const Decomposition& z, const Decomposition& truth) {
  const auto c = count_pairs(z, truth);
  if (c.truth_apart == 0) return std::nullopt;
  return static_cast<double>(c.agree_apart) / static_cast<double>(c.truth_apart);
}

}  // namespace addbo
