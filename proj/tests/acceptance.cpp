#include <cstdlib>
#include <iostream>
#include <string>

#include "gcurves/suite.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  int failed = 0;
  for (const auto& r : gcurves::run_acceptance(seed, &std::cout)) failed += r.pass ? 0 : 1;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
