// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "conical/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  auto results = conical::verify::run(only);
  int failures = conical::verify::report(results);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", results.size());
  return 0;
}
