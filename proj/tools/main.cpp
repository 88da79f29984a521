#include "hopdisc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return hopdisc::cli::run(argc, argv, std::cout, std::cerr);
}
