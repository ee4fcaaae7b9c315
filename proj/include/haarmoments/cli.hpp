#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "haarmoments/tensor.hpp"

namespace haarmoments::cli {

enum class Format { kText, kJson };

struct Config {
  Format format = Format::kText;
  std::int64_t dense_cap = kDefaultDenseCap;  // must stay >= 16
  std::uint64_t seed = 0x5eed5eed;
  int float_precision = 12;
};

/// Runs the command line given argv-style arguments (program name excluded).
/// Exit codes: 0 success / verify passed, 1 verify failed, 2 usage error.
/// `defaults` carries environment-derived settings (HAARMOMENTS_CAP).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Config& defaults = {});

}  // namespace haarmoments::cli
