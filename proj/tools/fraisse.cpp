#include <iostream>

#include "fraisse/cli.hpp"

int main(int argc, char** argv) {
  return fraisse::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
