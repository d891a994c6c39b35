#include "addbo/synthetic.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <cmath>
#include <numbers>
#include <numeric>

#include "addbo/errors.hpp"

namespace addbo {

double FeatureComponent::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd arg = frequencies * x + phases;
  return amplitude * weights.dot(arg.array().cos().matrix());
}

Eigen::VectorXd FeatureComponent::evaluate_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) const {
  Eigen::MatrixXd arg = rows * frequencies.transpose();
  arg.rowwise() += phases.transpose();
  return amplitude * (arg.array().cos().matrix() * weights);
}

Eigen::VectorXd FeatureComponent::gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd arg = frequencies * x + phases;
  const Eigen::VectorXd s = -(arg.array().sin() * weights.array()).matrix();
  return amplitude * (frequencies.transpose() * s);
}

SyntheticFunction::SyntheticFunction(Decomposition truth, std::vector<FeatureComponent> components,
                                     BoxDomain domain)
    : truth_(std::move(truth)), components_(std::move(components)), domain_(std::move(domain)) {
  if (truth_.dims() != domain_.dims()) throw InputError("SyntheticFunction: truth and domain dims differ");
  if (static_cast<int>(components_.size()) != truth_.num_nonempty())
    throw InputError("SyntheticFunction: one component per nonempty group required");
  argmax_ = Eigen::VectorXd::Zero(domain_.dims());
  for (const auto& c : components_) {
    auto [value, x] = maximize_component(c, domain_.sub_box(c.dims));
    known_max_ += value;
    for (std::size_t i = 0; i < c.dims.size(); ++i) argmax_[c.dims[i]] = x[static_cast<Eigen::Index>(i)];
  }
}

double SyntheticFunction::operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != domain_.dims()) throw InputError("SyntheticFunction: dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(components_.size()); ++i) sum += component_value(i, x);
  return sum;
}

double SyntheticFunction::component_value(int i, const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const auto& c = components_.at(i);
  Eigen::VectorXd sub(c.dims.size());
  for (std::size_t k = 0; k < c.dims.size(); ++k) sub[static_cast<Eigen::Index>(k)] = x[c.dims[k]];
  return c.evaluate(sub);
}

Objective SyntheticFunction::objective() const {
  // Copy: the objective may outlive this function object.
  auto self = std::make_shared<SyntheticFunction>(*this);
  return Objective{[self](const Eigen::VectorXd& x) { return (*self)(x); }, known_max_, truth_};
}

Decomposition sample_truth_partition(int dims, Rng& rng) {
  if (dims < 2) throw InputError("sample_truth_partition: need at least two dimensions");
  std::vector<int> order(dims);
  std::iota(order.begin(), order.end(), 0);
  while (true) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<int>> groups;
    for (int pos = 0; pos < dims;) {
      const int size = std::min(std::uniform_int_distribution<int>(1, 3)(rng), dims - pos);
      std::vector<int> g(order.begin() + pos, order.begin() + pos + size);
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
      pos += size;
    }
    if (groups.size() >= 2) return Decomposition::from_groups(groups, dims);
  }
}

SyntheticFunction generate_synthetic(int dims, std::uint64_t seed, const KernelSpec& spec,
                                     int features_per_group) {
  if (dims < 2) throw InputError("generate_synthetic: need at least two dimensions");
  if (features_per_group < 1) throw InputError("generate_synthetic: need at least one feature");
  spec.validate();
  Rng rng(substream_seed(seed, {0x5F11ULL}));
  Decomposition truth = sample_truth_partition(dims, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<FeatureComponent> comps;
  for (const auto& g : truth.groups()) {
    if (g.empty()) continue;
    FeatureComponent c;
    c.dims = g;
    const int d = static_cast<int>(g.size());
    c.frequencies.resize(features_per_group, d);
    c.phases.resize(features_per_group);
    c.weights.resize(features_per_group);
    for (int i = 0; i < features_per_group; ++i) {
      for (int k = 0; k < d; ++k) c.frequencies(i, k) = gauss(rng) / spec.bandwidth;
      c.phases[i] = phase(rng);
      c.weights[i] = gauss(rng);
    }
    c.amplitude = std::sqrt(2.0 * spec.scale / features_per_group);
    comps.push_back(std::move(c));
  }
  return SyntheticFunction(std::move(truth), std::move(comps), BoxDomain::unit(dims));
}

namespace {

constexpr std::size_t kMaxAscentStarts = 64;

int grid_resolution(int d) {
  switch (d) {
    case 1: return 2001;
    case 2: return 151;
    case 3: return 31;
    default: return 11;
  }
}

std::pair<double, Eigen::VectorXd> ascend(const FeatureComponent& c, const BoxDomain& box,
                                          Eigen::VectorXd x, double fx) {
  // Damped Newton with the analytic Hessian; plain gradient steps wherever
  // the Hessian is not negative definite.
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd arg = c.frequencies * x + c.phases;
    const Eigen::ArrayXd sw = c.weights.array() * arg.array().sin();
    const Eigen::ArrayXd cw = c.weights.array() * arg.array().cos();
    const Eigen::VectorXd g = -c.amplitude * (c.frequencies.transpose() * sw.matrix());
    const Eigen::MatrixXd h =
        -c.amplitude * (c.frequencies.transpose() * (c.frequencies.array().colwise() * cw).matrix());
    Eigen::VectorXd dir = g;
    const Eigen::LLT<Eigen::MatrixXd> neg(-h);
    if (neg.info() == Eigen::Success) dir = neg.solve(g);
    else dir *= 1e-3;
    double t = 1.0;
    bool moved = false;
    while (t > 1e-12) {
      const Eigen::VectorXd trial = box.clamp(x + t * dir);
      const double ft = c.evaluate(trial);
      if (ft > fx) {
        moved = (trial - x).cwiseAbs().maxCoeff() > 1e-12 && ft - fx > 1e-15;
        x = trial;
        fx = ft;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {fx, x};
}

}  // namespace

// Component values on the grid. Nodes come in runs of g along the last
// dimension, where every feature phase advances by the same angle, so each
// run needs one cos/sin per feature and then only rotations.
Eigen::VectorXd grid_values(const FeatureComponent& c, const Eigen::MatrixXd& nodes, int g) {
  const Eigen::Index d = nodes.cols();
  const double h = g > 1 ? nodes(1, d - 1) - nodes(0, d - 1) : 0.0;
  const Eigen::ArrayXd turn = c.frequencies.col(d - 1).array() * h;
  const Eigen::ArrayXd cos_turn = turn.cos(), sin_turn = turn.sin();
  const Eigen::ArrayXd w = c.amplitude * c.weights.array();
  Eigen::VectorXd values(nodes.rows());
  for (Eigen::Index start = 0; start < nodes.rows(); start += g) {
    const Eigen::ArrayXd arg = (c.frequencies * nodes.row(start).transpose() + c.phases).array();
    Eigen::ArrayXd co = arg.cos(), si = arg.sin();
    for (int k = 0; k < g; ++k) {
      values[start + k] = (w * co).sum();
      const Eigen::ArrayXd next = co * cos_turn - si * sin_turn;
      si = si * cos_turn + co * sin_turn;
      co = next;
    }
  }
  return values;
}

std::pair<double, Eigen::VectorXd> maximize_component(const FeatureComponent& c, const BoxDomain& box) {
  const int d = static_cast<int>(c.dims.size());
  const BoxDomain grid(box.lower(), box.upper(), grid_resolution(d));
  const Eigen::MatrixXd nodes = grid.grid_rows();
  const int g = grid_resolution(d);
  const Eigen::VectorXd values = grid_values(c, nodes, g);
  // Ascend from the grid nodes that beat all of their axis neighbours, best
  // first, so every sizeable basin gets its own start.
  std::vector<Eigen::Index> order;
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
    bool peak = true;
    Eigen::Index stride = 1;
    for (int k = d - 1; k >= 0 && peak; --k, stride *= g) {
      const Eigen::Index coord = (i / stride) % g;
      if (coord > 0 && values[i - stride] > values[i]) peak = false;
      if (coord + 1 < g && values[i + stride] > values[i]) peak = false;
    }
    if (peak) order.push_back(i);
  }
  const std::size_t starts = std::min<std::size_t>(kMaxAscentStarts, order.size());
  std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                    [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (std::size_t i = 0; i < starts; ++i) {
    auto [v, x] = ascend(c, box, nodes.row(order[i]).transpose(), values[order[i]]);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best, best_x};
}

}  // namespace addbo
