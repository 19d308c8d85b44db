#include <iostream>
#include <string>
#include <vector>

#include "qss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qss::cli::dispatch(args, std::cout, std::cerr);
}
