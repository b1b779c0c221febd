#include <iostream>
#include <string>
#include <vector>

#include "qualomega/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qualomega::cli::run(std::move(args), std::cout, std::cerr);
}
