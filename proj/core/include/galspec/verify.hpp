#pragma once

#include <string>
#include <vector>

namespace galspec::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Desk-scale oracle-equivalence and invariant suite; every check is
// deterministic and runs in seconds.
std::vector<CheckResult> run_verification(int jobs = 1);

// Formatted pass/fail table.
std::string render_table(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace galspec::verify
