#pragma once

#include <vector>

#include "haarmoments/partition.hpp"

namespace haarmoments {

/// Exact class function on S_k, keyed by cycle type. Holds character rows,
/// Weingarten functions, and anything else constant on conjugacy classes.
struct ClassFunction {
  int k = 0;
  PartitionMap<Rational> values;

  const Rational& at(const Partition& gamma) const;

  /// <f,g> = sum_gamma f(gamma) g(gamma) / z_gamma.
  Rational inner(const ClassFunction& other) const;
};

/// Irreducible character chi_{lambda,gamma} of S_k, computed by
/// Murnaghan-Nakayama border-strip recursion. Both arguments must be
/// partitions of the same k; throws std::invalid_argument otherwise.
BigInt character(const Partition& lambda, const Partition& gamma);

/// Full character table for S_k: rows lambda, columns gamma, both in the
/// canonical lexicographically decreasing order. Memoized; k is capped
/// (default 10) and exceeding the cap raises ResourceError.
struct CharacterTable {
  int k = 0;
  std::vector<Partition> partitions;        // canonical order, used for rows and columns
  std::vector<std::vector<BigInt>> values;  // values[row][col]

  const BigInt& at(const Partition& lambda, const Partition& gamma) const;
};

inline constexpr int kCharacterTableCap = 10;

const CharacterTable& character_table(int k);

/// Character row of lambda as a class function.
ClassFunction character_row(const Partition& lambda);

}  // namespace haarmoments
