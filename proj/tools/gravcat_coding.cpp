#include <iostream>
#include <string>
#include <vector>

#include "gravcat/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return gravcat::cli::run(args, std::cout, std::cerr);
}
