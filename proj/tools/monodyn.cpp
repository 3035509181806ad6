#include <iostream>
#include <string>
#include <vector>

#include "monodyn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const monodyn::CommandResult r = monodyn::dispatch(args);
  std::cout << r.out << std::flush;
  std::cerr << r.err << std::flush;
  return r.exit_code;
}
