#include <iostream>

#include "symdyn/cli.hpp"

int main(int argc, char** argv) {
  return sdyn::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
