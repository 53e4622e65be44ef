#include <iostream>
#include <string>
#include <vector>

#include "farofangs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return farofangs::cli::run(args, std::cout, std::cerr);
}
