#include <string>
#include <vector>

#include "spinbath/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinbath::cli::main_entry(args);
}
