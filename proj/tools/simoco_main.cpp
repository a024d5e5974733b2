#include <iostream>

#include "simoco/cli.hpp"

int main(int argc, char** argv) {
  return simoco::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
