#include <iostream>

#include "sparselda/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slda::cli::run(args, std::cout, std::cerr);
}
