#include <iostream>

#include "toricstab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toricstab::run_cli(args, std::cout, std::cerr);
}
