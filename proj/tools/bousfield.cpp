#include <iostream>

#include "bousfield/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bousfield::cli::run(args, std::cout, std::cerr);
}
