#include <string>
#include <vector>

#include "helix_pst/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return helix_pst::cli::run_command(args);
}
