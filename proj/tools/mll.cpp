#include <iostream>
#include <string>
#include <vector>

#include "mll/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mll::cli::run(args, std::cout, std::cerr);
}
