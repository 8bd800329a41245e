#include <iostream>

#include "mennicke/cli.hpp"

int main(int argc, char** argv) {
  return mennicke::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
