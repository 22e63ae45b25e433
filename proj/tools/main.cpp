#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("RENYI_SEED")) env_seed = s;
  return renyi::cli::run(args, std::cin, std::cout, std::cerr, env_seed);
}
