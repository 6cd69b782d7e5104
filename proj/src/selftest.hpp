#pragma once

#include <string>
#include <vector>

namespace nief::cli {

struct SelftestCase {
  std::string name;
  bool pass{false};
  double metric{0};  // the quantity checked against its threshold
};

/// Deterministic invariant battery behind the selftest task.  Every case is
/// seeded from the given value, so two runs with the same seed produce
/// byte-identical reports.
std::vector<SelftestCase> run_selftest_battery(unsigned seed);

}  // namespace nief::cli
