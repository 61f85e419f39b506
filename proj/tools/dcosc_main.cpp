#include <iostream>
#include <vector>

#include "dcosc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dcosc::run_cli(args, std::cout, std::cerr);
}
