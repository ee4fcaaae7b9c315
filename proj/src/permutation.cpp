#include "haarmoments/permutation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace haarmoments {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= k() || seen[static_cast<size_t>(v)]) {
      throw std::invalid_argument("Permutation: images are not a bijection");
    }
    seen[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> img(static_cast<size_t>(k));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int k,
                                     std::initializer_list<std::initializer_list<int>> cycles) {
  std::vector<int> img(static_cast<size_t>(k));
  std::iota(img.begin(), img.end(), 0);
  for (const auto& cyc : cycles) {
    std::vector<int> c(cyc);
    for (size_t i = 0; i < c.size(); ++i) {
      int from = c[i] - 1;
      int to = c[(i + 1) % c.size()] - 1;
      if (from < 0 || from >= k || to < 0 || to >= k) {
        throw std::invalid_argument("Permutation::from_cycles: point out of range");
      }
      img[static_cast<size_t>(from)] = to;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < k(); ++i) inv[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.k() != b.k()) throw std::invalid_argument("Permutation: size mismatch in composition");
  std::vector<int> img(static_cast<size_t>(a.k()));
  for (int i = 0; i < a.k(); ++i) img[static_cast<size_t>(i)] = a(b(i));
  return Permutation(std::move(img));
}

int Permutation::cycle_count() const {
  std::vector<bool> seen(img_.size(), false);
  int cycles = 0;
  for (int i = 0; i < k(); ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    ++cycles;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      j = img_[static_cast<size_t>(j)];
    }
  }
  return cycles;
}

Partition cycle_type(const Permutation& pi) {
  std::vector<bool> seen(static_cast<size_t>(pi.k()), false);
  std::vector<int> lengths;
  for (int i = 0; i < pi.k(); ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    int len = 0;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      j = pi(j);
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition::from_unsorted(std::move(lengths));
}

const std::vector<Permutation>& Permutation::all(int k) {
  if (k < 0 || k > 9) throw ResourceError("Permutation::all: k out of supported range [0,9]");
  static std::mutex mtx;
  static std::map<int, std::vector<Permutation>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<int> img(static_cast<size_t>(k));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return cache.emplace(k, std::move(out)).first->second;
}

}  // namespace haarmoments
