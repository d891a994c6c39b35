#pragma once

#include <span>
#include <string>
#include <vector>

namespace addbo {

/// Assignment of each of D input dimensions to one of M group slots
/// (labels 0..M-1). Groups are A_m = {j : z_j = m}; empty slots are allowed.
class Decomposition {
 public:
  Decomposition() = default;
  /// Throws InputError if any label falls outside [0, num_slots).
  Decomposition(std::vector<int> assignment, int num_slots);
  /// M = D slots.
  explicit Decomposition(std::vector<int> assignment);

  static Decomposition fully_partitioned(int dims);
  static Decomposition single_group(int dims);
  /// Builds from explicit disjoint groups covering 0..dims-1; M = dims.
  static Decomposition from_groups(const std::vector<std::vector<int>>& groups, int dims);

  int dims() const { return static_cast<int>(assignment_.size()); }
  int num_slots() const { return num_slots_; }
  int label(int dim) const { return assignment_.at(dim); }
  std::span<const int> assignment() const { return assignment_; }

  /// Dimensions in slot m, ascending.
  std::vector<int> group(int m) const;
  std::vector<std::vector<int>> groups() const;
  std::vector<int> group_sizes() const;
  int group_size(int m) const;
  std::vector<int> nonempty_groups() const;
  int num_nonempty() const;
  int max_group_size() const;

  /// Moves dimension `dim` to slot `m`.
  void assign(int dim, int m);

  /// Relabels slots in order of first appearance (0, 1, ...), so two
  /// decompositions describing the same partition compare equal.
  Decomposition canonical() const;
  bool same_partition(const Decomposition& other) const;

  /// Index of this labeling among all M^D labelings (dimension 0 is the
  /// most significant digit). Only meaningful for small D.
  long labeling_index() const;

  std::string to_string() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::vector<int> assignment_;
  int num_slots_ = 0;
};

}  // namespace addbo
