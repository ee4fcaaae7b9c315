#pragma once

#include <map>
#include <string>
#include <vector>

#include "haarmoments/rational.hpp"

namespace haarmoments {

/// Integer partition: weakly decreasing positive parts, stored without
/// trailing zeros. Doubles as an irrep label (lambda) and as a permutation
/// cycle type (gamma). The empty partition (weight 0) is valid.
class Partition {
 public:
  Partition() = default;

  /// Parts must be positive and weakly decreasing; throws otherwise.
  explicit Partition(std::vector<int> parts);

  /// Sorts descending and drops zeros; negative entries throw.
  static Partition from_unsorted(std::vector<int> parts);

  /// Parses the comma-separated text form, e.g. "3,1,1"; "" is the empty
  /// partition. Also accepts a surrounding "(...)".
  static Partition parse(const std::string& text);

  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// 1-based part accessor; returns 0 for j > length (the "lambda_j = 0"
  /// convention lives here, not in storage).
  int part(int j) const {
    return (j >= 1 && j <= length()) ? parts_[static_cast<size_t>(j - 1)] : 0;
  }

  const std::vector<int>& parts() const { return parts_; }

  /// Multiplicity of j as a part.
  int multiplicity(int j) const;

  /// Comma-separated parts, "" for the empty partition.
  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// Lexicographic comparison on the padded part sequences: positive when
/// a > b, i.e. the first nonzero difference a_j - b_j is positive.
int lex_compare(const Partition& a, const Partition& b);

/// Orders partitions the way tables are laid out: lexicographically
/// decreasing, so (k) comes first and (1^k) last.
struct PartitionBefore {
  bool operator()(const Partition& a, const Partition& b) const { return lex_compare(a, b) > 0; }
};

template <typename T>
using PartitionMap = std::map<Partition, T, PartitionBefore>;

/// All partitions of k (optionally with at most max_length parts), in the
/// canonical lexicographically decreasing order. partitions_of(0) = { () }.
std::vector<Partition> partitions_of(int k, int max_length = -1);

/// Centralizer order z_gamma = prod_j j^{m_j} m_j!.
BigInt z_gamma(const Partition& gamma);

/// Conjugacy class size h_gamma = k!/z_gamma.
BigInt class_size(const Partition& gamma);

/// Number of standard Young tableaux of shape lambda (dimension of the S_k
/// irrep). Evaluates both the hook-length product and the difference-product
/// formula and insists they agree.
BigInt f_lambda(const Partition& lambda);

/// Number of semistandard Young tableaux with entries <= d, i.e.
/// s_lambda(1^d), the dimension of the U(d) irrep. Zero when length > d.
BigInt schur_dim(const Partition& lambda, int d);

/// Conjugate (transposed) partition.
Partition conjugate(const Partition& lambda);

}  // namespace haarmoments
