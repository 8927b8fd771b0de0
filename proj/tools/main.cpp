#include <iostream>

#include "paretogof/cli.hpp"

int main(int argc, char** argv) {
  return paretogof::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
