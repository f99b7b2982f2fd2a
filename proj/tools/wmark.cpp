#include <iostream>
#include <string>
#include <vector>

#include "wmark/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return wmark::cli::run(args, std::cout, std::cerr);
}
