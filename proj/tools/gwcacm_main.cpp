#include <iostream>

#include "gwcacm/cli.hpp"

int main(int argc, char** argv) {
  return gwcacm::run_cli(argc, argv, std::cout, std::cerr);
}
