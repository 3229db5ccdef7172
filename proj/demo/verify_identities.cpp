// Runs every built-in verification suite and prints one line per check.
#include <cstdio>

#include "qdl/qdl.hpp"

using namespace qdl;

int main() {
  bool ok = true;
  for (const char* suite : {"core", "advisory"}) {
    const auto reports = run_suite(suite);
    const SuiteSummary s = summarize(reports);
    std::printf("%-9s %zu checks, %zu failed\n", suite, s.total, s.failed);
    for (const auto& r : reports) {
      const char* tag = r.error ? "error" : r.skipped ? "skip" : r.passed ? "ok" : "FAIL";
      std::printf("  %-5s %-44s res %.2e tol %.1e\n", tag, r.identity.c_str(), r.abs_residual, r.tolerance);
    }
    ok = ok && s.all_passed;
  }
  return ok ? 0 : 1;
}
