#include <iostream>

#include "nilkit/cli.hpp"

int main(int argc, char** argv) {
  return nilkit::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
