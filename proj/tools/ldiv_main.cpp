#include <iostream>
#include <string>
#include <vector>

#include "ldiv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lattdiv::cli::run(args, std::cin, std::cout, std::cerr);
}
