#include "ordstat/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return ordstat::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
