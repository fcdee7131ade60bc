#include <iostream>
#include <string>
#include <vector>

#include "anosov/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return anosov::run_cli(args, std::cout, std::cerr);
}
