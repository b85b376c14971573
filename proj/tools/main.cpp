#include <iostream>
#include <string>
#include <vector>

#include "localprod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return localprod::run_command(args, std::cout, std::cerr);
}
