#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cvsheet {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;  // worst residual / ratio, human-oriented
};

// Property suites over seeded random ensembles: transform round trips,
// Parseval, Hilbert algebra, commutator route agreement, kernel values,
// quadratic-term equivalences, zero-mode cancellation. Everything the
// library's internal consistency rests on, in one fast battery. `n` is the
// grid for the field-based checks; `trials` the ensemble size per check.
std::vector<CheckResult> run_identity_checks(std::uint64_t seed, int trials, int n);

}  // namespace cvsheet
