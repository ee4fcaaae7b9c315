#pragma once

#include <initializer_list>
#include <vector>

#include "haarmoments/partition.hpp"

namespace haarmoments {

/// Permutation of {0..k-1} in one-line notation. Composition is
/// (a*b)(i) = a(b(i)), so b acts first.
class Permutation {
 public:
  Permutation() = default;

  /// One-line images; must be a bijection of {0..k-1}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int k);

  /// Builds from 1-based disjoint cycles, e.g. from_cycles(5, {{1,2,3}})
  /// is (1 2 3)(4)(5). Unlisted points are fixed.
  static Permutation from_cycles(int k, std::initializer_list<std::initializer_list<int>> cycles);

  int k() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  int cycle_count() const;

  /// All k! permutations in lexicographic one-line order; the identity is
  /// first. Guarded against k large enough to exhaust memory.
  static const std::vector<Permutation>& all(int k);

 private:
  std::vector<int> img_;
};

/// Cycle lengths sorted non-increasing; a partition of k.
Partition cycle_type(const Permutation& pi);

}  // namespace haarmoments
