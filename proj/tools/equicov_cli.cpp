#include <iostream>
#include <string>
#include <vector>

#include "equicov/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return equicov::run_cli(args, std::cout);
}
