#include <iostream>
#include <string>
#include <vector>

#include "orbithull/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto outcome = orbithull::cli::run(args);
  if (outcome.out_path.empty()) std::cout << outcome.report;
  if (!outcome.diagnostic.empty()) std::cerr << outcome.diagnostic << '\n';
  return outcome.exit;
}
