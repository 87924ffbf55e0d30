// Runs every acceptance criterion with the default configuration and prints
// one PASS/FAIL line per criterion. Exit status 0 iff all pass.
#include <cstdio>
#include <fstream>
#include <string>

#include "trigdisc/verify.hpp"

int main(int argc, char** argv) {
  trigdisc::SuiteConfig config;
  if (argc > 1) {
    config.criteria.clear();
    for (int i = 1; i < argc; ++i) config.criteria.push_back(std::stoi(argv[i]));
  }
  int failures = 0;
  trigdisc::SuiteReport report;
  report.config = config;
  for (int id : config.criteria) {
    auto res = trigdisc::run_criterion(id, config);
    std::printf("[%s] criterion %d (%s), %.1f s: %s\n", res.passed ? "PASS" : "FAIL",
                res.id, res.name.c_str(), res.seconds, res.summary.c_str());
    std::fflush(stdout);
    failures += res.passed ? 0 : 1;
    report.criteria.push_back(std::move(res));
  }
  std::ofstream("acceptance_report.json") << report.to_json().dump(2) << "\n";
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(config.criteria.size()) - failures, config.criteria.size());
  return failures == 0 ? 0 : 1;
}
