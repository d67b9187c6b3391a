// Acceptance gate: runs every criterion at full budget and prints one
// pass/fail line per check.
#include <cstdio>

#include "verify.hpp"

int main() {
  auto report = kdim::run_verify({});
  std::fputs(report.to_text().c_str(), stdout);
  return report.all_pass() ? 0 : 1;
}
