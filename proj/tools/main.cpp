#include <iostream>
#include <string>
#include <vector>

#include "dispersia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispersia::run_cli(args, std::cout, std::cerr);
}
