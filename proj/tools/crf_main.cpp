#include <iostream>

#include "crf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return crf::run_cli(args, std::cout, std::cerr);
}
