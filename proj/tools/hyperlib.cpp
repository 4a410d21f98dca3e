#include <iostream>
#include <string>
#include <vector>

#include "hyper/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyper::cli::run(args, std::cout, std::cerr);
}
