#include <iostream>
#include <string>
#include <vector>

#include "funklab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return funklab::cli::run(args, std::cout, std::cerr);
}
