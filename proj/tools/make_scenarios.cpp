// Writes the bundled example scenario directories.
#include <iostream>

#include "sunada/scenario.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_scenarios OUTPUT_DIR\n";
    return 2;
  }
  const std::filesystem::path root = argv[1];
  for (const char* name : {"fano", "brooks", "s4-negative", "degenerate"})
    sunada::write_example_scenario(name, root / name);
  return 0;
}
