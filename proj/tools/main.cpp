#include <iostream>
#include <string>
#include <vector>

#include "cmopla/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cmopla::cli::run(args, std::cout, std::cerr);
}
