#include <iostream>

#include "soficlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return soficlab::run_cli(args, std::cout, std::cerr);
}
