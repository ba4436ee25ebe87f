#pragma once
// The acceptance suite: one entry per release criterion, each reporting a
// measured value against a pinned tolerance. Deterministic for a fixed seed.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace stqrf {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240915);

// Prints one PASS/FAIL line per criterion; returns true iff all pass.
bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace stqrf
