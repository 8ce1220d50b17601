#pragma once

#include <ostream>

namespace oracle_lab {

/// Quick runtime invariant suite. Prints one PASS/FAIL line per check and
/// returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace oracle_lab
