#include <iostream>
#include <string>
#include <vector>

#include "cordial/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cordial::cli_main(args, std::cout, std::cerr);
}
