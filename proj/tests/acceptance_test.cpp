#include <iostream>

#include "bubbleshoot/acceptance.hpp"

int main(int argc, char** argv) {
  const auto results = bubbleshoot::run_acceptance(std::cout, argc > 1 ? argv[1] : "");
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
