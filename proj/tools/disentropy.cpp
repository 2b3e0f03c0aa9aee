#include <iostream>
#include <string>
#include <vector>

#include "disentropy/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return disentropy::cli::run(args, std::cout, std::cerr);
}
