#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aidw {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle suites run by `aidw selfcheck`: kNN against full sort, IDW against
/// the direct double evaluation, AIDW/IDW degeneracy, and the determinism
/// matrix over engines, worker counts, kernel ISAs and layouts.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

}  // namespace aidw
