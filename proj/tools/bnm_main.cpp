#include <iostream>
#include <string>
#include <vector>

#include "bnm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bnm::cli::run(args, std::cout, std::cerr);
}
