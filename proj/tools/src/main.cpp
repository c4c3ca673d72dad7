#include <iostream>
#include <string>
#include <vector>

#include "maxent/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return maxent::cli::run_command(args, std::cout, std::cerr);
}
