// Runs the acceptance battery and prints one line per criterion.
#include <iostream>

#include "fnoise/suite.hpp"

int main(int argc, char** argv) {
  fnoise::SuiteOptions options;
  if (argc > 1) options.seed = std::stoull(argv[1]);
  bool all = true;
  fnoise::run_suite(options, [&](const fnoise::CriterionResult& r) {
    std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << " " << r.title << " ("
              << r.seconds << " s)";
    if (!r.passed) std::cout << "\n  " << r.details.dump();
    std::cout << std::endl;
    all = all && r.passed;
  });
  return all ? 0 : 1;
}
