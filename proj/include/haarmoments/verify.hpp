#pragma once

#include <optional>
#include <string>
#include <vector>

#include "haarmoments/montecarlo.hpp"
#include "haarmoments/weingarten.hpp"

namespace haarmoments {

struct VerifyOptions {
  std::optional<int> k;
  std::optional<int> d;
  long mc_samples = 0;  // 0 = per-identity default
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0 = hardware
};

struct VerifyReport {
  std::string identity;
  bool pass = false;
  std::string detail;

  // Populated by Monte Carlo identities.
  std::optional<std::string> exact;
  std::optional<double> estimate;
  std::optional<double> stderr_;
  std::optional<double> z;
};

/// Names of the verification routines, in registration order. `verify all`
/// runs them in exactly this order; together they cover the full acceptance
/// checklist for the build.
const std::vector<std::string>& registered_identities();

/// Runs one identity; throws std::invalid_argument (listing the registered
/// names) when the name is unknown.
VerifyReport run_identity(const std::string& name, const VerifyOptions& options = {});

std::vector<VerifyReport> run_all(const VerifyOptions& options = {});

/// Names accepted by exact_vs_mc_report.
const std::vector<std::string>& mc_identities();

/// Exact-vs-Monte-Carlo comparison for one registered identity:
/// exact value, MC estimate, standard error, z-score, pass at |z| <= 5.
/// For operator identities the comparison is entrywise and the reported
/// numbers describe the worst entry, with exact deviation target "0".
VerifyReport exact_vs_mc_report(const std::string& identity, const VerifyOptions& options = {});

/// Deterministic small rationals for verification inputs.
Rational random_small_rational(RngStream& rng);
GaussianRational random_gaussian_rational(RngStream& rng);
ExactMatrix random_exact_matrix(int rows, int cols, RngStream& rng);

}  // namespace haarmoments
