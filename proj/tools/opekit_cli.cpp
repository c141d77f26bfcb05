#include <iostream>
#include <string>
#include <vector>

#include "opekit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opekit::run_cli(args, std::cout, std::cerr);
}
