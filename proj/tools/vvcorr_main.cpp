#include <string>
#include <vector>

#include "vvcorr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vvcorr::run(args);
}
