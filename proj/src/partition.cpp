#include "haarmoments/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace haarmoments {

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational_from_string: empty string");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw std::invalid_argument("rational_from_string: bad character in \"" + s + "\"");
    }
  }
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) {
    throw std::invalid_argument("rational_from_string: cannot parse \"" + s + "\"");
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("rational_from_string: zero denominator in \"" + s + "\"");
  }
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string GaussianRational::str() const {
  if (is_real()) return rational_to_string(re);
  return "(" + rational_to_string(re) + ", " + rational_to_string(im) + ")";
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
    weight_ += parts_[i];
  }
}

Partition Partition::from_unsorted(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("Partition: negative part");
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return Partition(std::move(parts));
}

Partition Partition::parse(const std::string& text) {
  std::string s = text;
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<int> parts;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("Partition::parse: bad part \"" + tok + "\"");
      parts.push_back(v);
    }
  }
  return Partition(std::move(parts));
}

int Partition::multiplicity(int j) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), j));
}

std::string Partition::str() const {
  std::string out;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

int lex_compare(const Partition& a, const Partition& b) {
  int n = std::max(a.length(), b.length());
  for (int j = 1; j <= n; ++j) {
    int diff = a.part(j) - b.part(j);
    if (diff != 0) return diff > 0 ? 1 : -1;
  }
  return 0;
}

namespace {

void enumerate_partitions(int remaining, int max_part, int slots_left, std::vector<int>& acc,
                          std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(acc);
    return;
  }
  if (slots_left == 0) return;
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    acc.push_back(p);
    enumerate_partitions(remaining - p, p, slots_left - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int k, int max_length) {
  if (k < 0) throw std::invalid_argument("partitions_of: k must be non-negative");
  std::vector<Partition> out;
  std::vector<int> acc;
  int slots = max_length < 0 ? k : std::min(max_length, k);
  enumerate_partitions(k, k, k == 0 ? 0 : slots, acc, out);
  return out;
}

BigInt z_gamma(const Partition& gamma) {
  BigInt z = 1;
  int i = 0;
  const auto& parts = gamma.parts();
  while (i < gamma.length()) {
    int j = parts[static_cast<size_t>(i)];
    int m = 0;
    while (i < gamma.length() && parts[static_cast<size_t>(i)] == j) {
      ++m;
      ++i;
    }
    BigInt jp;
    mpz_ui_pow_ui(jp.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(m));
    z *= jp * factorial(m);
  }
  return z;
}

BigInt class_size(const Partition& gamma) { return factorial(gamma.weight()) / z_gamma(gamma); }

Partition conjugate(const Partition& lambda) {
  std::vector<int> cols;
  for (int j = 1; j <= lambda.part(1); ++j) {
    int c = 0;
    for (int i = 1; i <= lambda.length(); ++i) {
      if (lambda.part(i) >= j) ++c;
    }
    cols.push_back(c);
  }
  return Partition(std::move(cols));
}

BigInt f_lambda(const Partition& lambda) {
  const int k = lambda.weight();
  if (k == 0) return 1;

  // Hook-length product.
  Partition conj = conjugate(lambda);
  BigInt hooks = 1;
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.part(i); ++j) {
      hooks *= lambda.part(i) - j + conj.part(j) - i + 1;
    }
  }
  BigInt by_hooks = factorial(k) / hooks;

  // Difference-product formula with mu_j = lambda_j + l - j.
  const int l = lambda.length();
  std::vector<BigInt> mu(static_cast<size_t>(l));
  for (int j = 1; j <= l; ++j) mu[static_cast<size_t>(j - 1)] = lambda.part(j) + l - j;
  BigInt num = factorial(k);
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) num *= mu[static_cast<size_t>(i)] - mu[static_cast<size_t>(j)];
  }
  BigInt den = 1;
  for (int j = 0; j < l; ++j) den *= factorial(static_cast<int>(mu[static_cast<size_t>(j)].get_si()));
  BigInt by_difference = num / den;

  if (by_hooks != by_difference) {
    throw std::logic_error("f_lambda: hook and difference-product formulas disagree for " +
                           lambda.str());
  }
  return by_hooks;
}

BigInt schur_dim(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("schur_dim: d must be >= 1");
  if (lambda.length() > d) return 0;
  std::vector<long> mu(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) mu[static_cast<size_t>(i - 1)] = lambda.part(i) + d - i;
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= mu[static_cast<size_t>(i)] - mu[static_cast<size_t>(j)];
      den *= j - i;
    }
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace haarmoments
