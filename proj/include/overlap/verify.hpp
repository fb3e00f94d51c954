#pragma once

#include <string>
#include <vector>

namespace overlap {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // worst deviation or first failure
};

struct VerifyOptions {
    // Test hook: added to the first computed pmf entry before comparison, so
    // the suite's sensitivity can be demonstrated.  Never set by the CLI.
    double perturb_first_entry = 0.0;
};

/// Runs the oracle cross-validation suite.  Fast covers M+N <= 6; Full
/// extends the state-vector checks to M+N <= 10 and adds the mixed-state
/// oracles.
std::vector<CheckResult> run_verification(VerifyLevel level, const VerifyOptions& opt = {});

} // namespace overlap
