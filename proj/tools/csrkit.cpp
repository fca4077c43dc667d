#include <iostream>
#include <string>
#include <vector>

#include "csrkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return csrkit::run_cli(args, std::cin, std::cout, std::cerr);
}
