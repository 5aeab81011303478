#include <iostream>
#include <string>
#include <vector>

#include "d2dsec/cli/commands.h"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return d2dsec::cli::run(args, std::cout, std::cerr);
}
