#include <iostream>

#include "defectpoly_cli.hpp"

int main(int argc, char** argv) {
  return defectpoly::cli::run(argc, argv, {std::cin, std::cout, std::cerr});
}
