#pragma once

#include <string>
#include <vector>

#include "fraclamb/config.hpp"

namespace fraclamb {

struct SelftestCheck {
    std::string name;
    double measured = 0.0;  // worst error observed, in the check's own metric
    double limit = 0.0;     // passes when measured < limit
    bool passed = false;
};

struct SelftestReport {
    std::vector<SelftestCheck> checks;

    bool all_passed() const;
    /// One "PASS|FAIL name measured=... limit=..." line per check plus a
    /// summary line. Contains nothing run-dependent, so equal inputs give
    /// byte-identical text.
    std::string to_text() const;
};

/// Runs the library's invariant suite: special-function identities, the
/// fractional-operator laws, solver round trips through every forward
/// operator, and the Cartesian Monte Carlo cross-checks (seeded from cfg).
SelftestReport run_selftest(const QuadratureConfig& cfg);

}  // namespace fraclamb
