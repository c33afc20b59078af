#include <iostream>

#include "allee/cli/app.hpp"

int main(int argc, char** argv) {
  return allee::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
