#include <string>
#include <vector>

#include "ncwigner/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncwigner::cli::run(args);
}
