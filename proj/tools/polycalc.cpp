#include <string>
#include <vector>

#include "polycalc/suite.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polycalc::run_cli(args);
}
