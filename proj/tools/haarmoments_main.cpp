#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "haarmoments/cli.hpp"

int main(int argc, char** argv) {
  haarmoments::cli::Config defaults;
  if (const char* cap = std::getenv("HAARMOMENTS_CAP")) {
    try {
      defaults.dense_cap = std::stoll(cap);
    } catch (const std::exception&) {
      std::cerr << "HAARMOMENTS_CAP is not an integer: " << cap << "\n";
      return 2;
    }
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  return haarmoments::cli::run(args, std::cout, std::cerr, defaults);
}
