#include <iostream>
#include <string>
#include <vector>

#include "nilgrowth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return nilgrowth::cli::run(args, std::cout, std::cerr);
}
