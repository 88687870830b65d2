#include <exception>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  try {
    return tricolor::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
  } catch (const std::exception& e) {
    // Only reachable through a bug: every input problem maps to exit 2 inside run().
    std::cerr << "internal error: " << e.what() << "\n";
    return tricolor::cli::kNotSolved;
  }
}
