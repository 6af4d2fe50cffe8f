#include <iostream>
#include <string>
#include <vector>

#include "gflat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gflat::run_cli(args, std::cout, std::cerr);
}
