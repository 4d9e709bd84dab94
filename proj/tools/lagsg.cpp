#include <iostream>
#include <string>
#include <vector>

#include "lagsg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lagsg::cli::run(args, std::cout, std::cerr);
}
