#include <iostream>

#include "ctxfam/cli.hpp"

int main(int argc, char** argv) {
  return ctxfam::run_command({argv, argv + argc}, std::cout, std::cerr);
}
