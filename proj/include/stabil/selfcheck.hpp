#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stabil {

enum class CheckLevel { Fast, Full };

struct SuiteResult {
  std::string name;
  bool passed = true;
  int cases = 0;
  double seconds = 0.0;
  /// First failing case, empty on success.
  std::string detail;
};

/// Fast: exact identity (n <= 8), moment formula, coefficient bounds.
/// Full adds G-triviality, moment bounds, oracle agreement, the functional
/// law and a small sufficiency run. Every suite runs; callers report the
/// first failure.
std::vector<SuiteResult> run_selfcheck(CheckLevel level, std::uint64_t seed = 0);

}  // namespace stabil
