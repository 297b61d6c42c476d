#include <iostream>

#include "patchbound/cli.hpp"

int main(int argc, char** argv) {
  return patchbound::cli_main(argc, argv, std::cout, std::cerr);
}
