#include "addbo/decomposition.hpp"

#include <algorithm>
#include <sstream>

#include "addbo/errors.hpp"

namespace addbo {

Decomposition::Decomposition(std::vector<int> assignment, int num_slots)
    : assignment_(std::move(assignment)), num_slots_(num_slots) {
  if (num_slots_ < 1 && !assignment_.empty())
    throw InputError("Decomposition: need at least one slot");
  for (int z : assignment_)
    if (z < 0 || z >= num_slots_) throw InputError("Decomposition: label out of range");
}

Decomposition::Decomposition(std::vector<int> assignment)
    : Decomposition(assignment, static_cast<int>(assignment.size())) {}

Decomposition Decomposition::fully_partitioned(int dims) {
  std::vector<int> z(dims);
  for (int j = 0; j < dims; ++j) z[j] = j;
  return Decomposition(std::move(z));
}

Decomposition Decomposition::single_group(int dims) {
  return Decomposition(std::vector<int>(dims, 0));
}

Decomposition Decomposition::from_groups(const std::vector<std::vector<int>>& groups, int dims) {
  std::vector<int> z(dims, -1);
  int m = 0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    for (int j : g) {
      if (j < 0 || j >= dims || z[j] != -1)
        throw InputError("Decomposition::from_groups: groups must be disjoint and in range");
      z[j] = m;
    }
    ++m;
  }
  if (std::find(z.begin(), z.end(), -1) != z.end())
    throw InputError("Decomposition::from_groups: groups do not cover every dimension");
  return Decomposition(std::move(z));
}

std::vector<int> Decomposition::group(int m) const {
  std::vector<int> out;
  for (int j = 0; j < dims(); ++j)
    if (assignment_[j] == m) out.push_back(j);
  return out;
}

std::vector<std::vector<int>> Decomposition::groups() const {
  std::vector<std::vector<int>> out(num_slots_);
  for (int j = 0; j < dims(); ++j) out[assignment_[j]].push_back(j);
  return out;
}

std::vector<int> Decomposition::group_sizes() const {
  std::vector<int> out(num_slots_, 0);
  for (int z : assignment_) ++out[z];
  return out;
}

int Decomposition::group_size(int m) const {
  return static_cast<int>(std::count(assignment_.begin(), assignment_.end(), m));
}

std::vector<int> Decomposition::nonempty_groups() const {
  std::vector<int> out;
  auto sizes = group_sizes();
  for (int m = 0; m < num_slots_; ++m)
    if (sizes[m] > 0) out.push_back(m);
  return out;
}

int Decomposition::num_nonempty() const { return static_cast<int>(nonempty_groups().size()); }

int Decomposition::max_group_size() const {
  auto sizes = group_sizes();
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

void Decomposition::assign(int dim, int m) {
  if (dim < 0 || dim >= dims()) throw InputError("Decomposition::assign: dimension out of range");
  if (m < 0 || m >= num_slots_) throw InputError("Decomposition::assign: slot out of range");
  assignment_[dim] = m;
}

Decomposition Decomposition::canonical() const {
  std::vector<int> relabel(num_slots_, -1);
  std::vector<int> z(dims());
  int next = 0;
  for (int j = 0; j < dims(); ++j) {
    int& r = relabel[assignment_[j]];
    if (r < 0) r = next++;
    z[j] = r;
  }
  return Decomposition(std::move(z), num_slots_);
}

bool Decomposition::same_partition(const Decomposition& other) const {
  if (dims() != other.dims()) return false;
  return canonical().assignment_ == other.canonical().assignment_;
}

long Decomposition::labeling_index() const {
  long idx = 0;
  for (int z : assignment_) idx = idx * num_slots_ + z;
  return idx;
}

std::string Decomposition::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first_group = true;
  for (const auto& g : groups()) {
    if (g.empty()) continue;
    if (!first_group) os << ' ';
    first_group = false;
    os << '[';
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ']';
  }
  os << '}';
  return os.str();
}

}  // namespace addbo
