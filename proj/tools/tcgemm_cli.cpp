#include <iostream>

#include "tcgemm/cli.hpp"

int main(int argc, char** argv) {
  return tcgemm::cli_main(argc, argv, std::cout, std::cerr);
}
