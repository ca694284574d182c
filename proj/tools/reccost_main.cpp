#include <iostream>
#include <string>
#include <vector>

#include "reccost_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return reccost::cli::run(args, std::cout, std::cerr).exit_code;
}
