// Acceptance gate: one PASS/FAIL line per criterion, followed by any notes.
// Exit status is 0 only when every selected criterion passes.

#include <CLI11.hpp>

#include <iostream>
#include <vector>

#include "opengame/suite.hpp"

int main(int argc, char** argv) {
  namespace suite = opengame::suite;
  CLI::App app{"opengame acceptance criteria"};
  std::vector<int> criteria;
  suite::Options options;
  app.add_option("criteria", criteria, "criteria to run (default: all)")
      ->check(CLI::Range(1, suite::kCriteria));
  app.add_option("--seed", options.seed, "seed for random instances");
  app.add_option("--jobs", options.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  CLI11_PARSE(app, argc, argv);

  if (criteria.empty()) {
    for (int c = 1; c <= suite::kCriteria; ++c) criteria.push_back(c);
  }
  int failed = 0;
  for (int c : criteria) {
    suite::BatteryResult r = suite::run_criterion(c, options);
    std::cout << suite::format_line(r) << "\n";
    for (const auto& note : r.notes) std::cout << "    note: " << note << "\n";
    std::cout.flush();
    failed += !r.passed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << "\n";
  return failed ? 1 : 0;
}
