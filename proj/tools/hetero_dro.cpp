#include <iostream>
#include <string>
#include <vector>

#include "hdro/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hdro::RunCli(args, std::cout, std::cerr);
}
