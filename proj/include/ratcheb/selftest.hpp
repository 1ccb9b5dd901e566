#pragma once

#include <string>

namespace ratcheb {

struct SelftestResult {
  int checks = 0;
  int failures = 0;
  std::string report;
};

/// Runs the built-in invariant battery: Green-engine closed forms and
/// identities, hand-solved extremal problems, structure checks on a small
/// randomized battery, and the LP oracle agreement.  The seed drives the
/// randomized problems; identical seeds give identical reports.
SelftestResult run_selftest(unsigned seed = 1);

}  // namespace ratcheb
