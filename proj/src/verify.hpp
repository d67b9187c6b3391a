#ifndef KDIM_VERIFY_HPP_
#define KDIM_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace kdim {

struct CheckResult {
  std::string id;         // A1..A11
  std::string name;
  std::string measured;   // human-readable values
  std::string tolerance;
  bool pass = false;
  bool skipped = false;   // reduced budget made the check unreliable
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double budget_scale = 1.0;
  bool all_pass() const;  // skipped checks do not fail the report
  std::string to_text() const;
};

struct VerifyOptions {
  double budget_scale = 1.0;  // < 1 runs cheap variants; misses are skipped
  std::uint64_t seed = 1;
  std::string corrupt = "";   // test hook: id of a check to sabotage
  bool enforce_time = true;
};

VerifyReport run_verify(const VerifyOptions& opt = {});

}  // namespace kdim

#endif  // KDIM_VERIFY_HPP_
