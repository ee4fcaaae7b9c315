#include "haarmoments/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace haarmoments {

const Rational& ClassFunction::at(const Partition& gamma) const {
  auto it = values.find(gamma);
  if (it == values.end()) {
    throw std::invalid_argument("ClassFunction: no value for cycle type " + gamma.str());
  }
  return it->second;
}

Rational ClassFunction::inner(const ClassFunction& other) const {
  if (k != other.k) throw std::invalid_argument("ClassFunction::inner: weight mismatch");
  Rational acc = 0;
  for (const auto& [gamma, v] : values) {
    acc += v * other.at(gamma) / Rational(z_gamma(gamma));
  }
  return acc;
}

namespace {

// Murnaghan-Nakayama over beta-numbers (first-column hook lengths). The
// cycles of gamma are consumed largest-first, so the memo key is the shape
// plus the recursion depth.
class MNComputer {
 public:
  explicit MNComputer(std::vector<int> cycles) : cycles_(std::move(cycles)) {}

  BigInt run(const Partition& lambda) { return compute(lambda, 0); }

 private:
  BigInt compute(const Partition& lambda, size_t depth) {
    if (depth == cycles_.size()) return lambda.empty() ? 1 : 0;
    auto key = std::make_pair(lambda, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const int t = cycles_[depth];
    const int len = lambda.length();
    std::vector<int> betas(static_cast<size_t>(len));
    for (int i = 1; i <= len; ++i) betas[static_cast<size_t>(i - 1)] = lambda.part(i) + len - i;

    BigInt total = 0;
    for (size_t i = 0; i < betas.size(); ++i) {
      int target = betas[i] - t;
      if (target < 0) continue;
      bool collision = false;
      int crossings = 0;
      for (size_t j = 0; j < betas.size(); ++j) {
        if (j == i) continue;
        if (betas[j] == target) collision = true;
        if (betas[j] > target && betas[j] < betas[i]) ++crossings;
      }
      if (collision) continue;

      std::vector<int> next = betas;
      next[i] = target;
      std::sort(next.begin(), next.end(), std::greater<int>());
      std::vector<int> parts;
      const int n = static_cast<int>(next.size());
      for (int j = 1; j <= n; ++j) {
        int p = next[static_cast<size_t>(j - 1)] - (n - j);
        if (p > 0) parts.push_back(p);
      }
      BigInt sub = compute(Partition(std::move(parts)), depth + 1);
      if (crossings % 2 == 0) {
        total += sub;
      } else {
        total -= sub;
      }
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<int> cycles_;
  std::map<std::pair<Partition, size_t>, BigInt, bool (*)(const std::pair<Partition, size_t>&,
                                                          const std::pair<Partition, size_t>&)>
      memo_{&MNComputer::key_less};

  static bool key_less(const std::pair<Partition, size_t>& a,
                       const std::pair<Partition, size_t>& b) {
    if (a.second != b.second) return a.second < b.second;
    return lex_compare(a.first, b.first) > 0;
  }
};

}  // namespace

BigInt character(const Partition& lambda, const Partition& gamma) {
  if (lambda.weight() != gamma.weight()) {
    throw std::invalid_argument("character: lambda and gamma must partition the same k");
  }
  if (lambda.weight() <= kCharacterTableCap && lambda.weight() >= 1) {
    return character_table(lambda.weight()).at(lambda, gamma);
  }
  if (lambda.weight() == 0) return 1;
  MNComputer mn(gamma.parts());
  return mn.run(lambda);
}

const BigInt& CharacterTable::at(const Partition& lambda, const Partition& gamma) const {
  auto find_index = [this](const Partition& p) {
    for (size_t i = 0; i < partitions.size(); ++i) {
      if (partitions[i] == p) return i;
    }
    throw std::invalid_argument("CharacterTable: not a partition of " + std::to_string(k));
  };
  return values[find_index(lambda)][find_index(gamma)];
}

const CharacterTable& character_table(int k) {
  if (k < 1) throw std::invalid_argument("character_table: k must be >= 1");
  if (k > kCharacterTableCap) {
    throw ResourceError("character_table: k exceeds cap " + std::to_string(kCharacterTableCap));
  }
  static std::mutex mtx;
  static std::map<int, CharacterTable> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  CharacterTable table;
  table.k = k;
  table.partitions = partitions_of(k);
  table.values.resize(table.partitions.size());
  for (size_t r = 0; r < table.partitions.size(); ++r) {
    table.values[r].reserve(table.partitions.size());
    for (const auto& gamma : table.partitions) {
      MNComputer mn(gamma.parts());
      table.values[r].push_back(mn.run(table.partitions[r]));
    }
  }
  return cache.emplace(k, std::move(table)).first->second;
}

ClassFunction character_row(const Partition& lambda) {
  ClassFunction row;
  row.k = lambda.weight();
  for (const auto& gamma : partitions_of(row.k)) {
    row.values.emplace(gamma, Rational(character(lambda, gamma)));
  }
  return row;
}

}  // namespace haarmoments
