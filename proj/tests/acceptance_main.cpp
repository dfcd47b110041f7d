// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. Registered with ctest next to the unit suite.

#include <cstdio>

#include "coxcert/acceptance.hpp"

int main() {
  const std::vector<coxcert::CriterionResult> results = coxcert::run_acceptance();
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%-13s %s  (%.2fs)  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu acceptance criteria pass\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
