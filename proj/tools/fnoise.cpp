#include <iostream>
#include <string>
#include <vector>

#include "fnoise/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fnoise::cli::run(args, std::cout, std::cerr);
}
