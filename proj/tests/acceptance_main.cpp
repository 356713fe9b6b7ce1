// Standalone acceptance gate. Runs the verification suite with its pinned
// tolerances and prints one verdict line per criterion; exits non-zero if any
// criterion fails. Kept free of any test framework so the output is exactly
// one line per criterion plus a summary.

#include <cstdio>
#include <vector>

#include "qbec/selfcheck.hpp"

int main() {
  const std::vector<qbec::CheckResult> results = qbec::run_selfcheck();
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const qbec::CheckResult& r = results[i];
    std::printf("[%s] criterion %zu: %s -- %s\n", r.pass ? "PASS" : "FAIL", i + 1, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ok = false;
  }
  std::printf("%s\n", ok ? "acceptance: all criteria satisfied" : "acceptance: FAILED");
  return ok ? 0 : 1;
}