#include <iostream>

#include "tribody/cli/app.hpp"

int main(int argc, char** argv) {
  return tribody::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
