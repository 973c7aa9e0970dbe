#pragma once

#include "galspec/io.hpp"

#include <string>
#include <vector>

namespace galspec::driver {

// Exit-code contract shared with the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_budget = 3;
inline constexpr int exit_nonconvergent = 4;

struct CommandOutput {
    int exit_code = exit_ok;
    std::string message; // human-readable diagnostics (stderr)
    // name -> serialized content; written as <out><name> or stdout for ".json"
    std::vector<std::pair<std::string, std::string>> files;
};

// Point cloud of one finite box, as JSON (".json") and CSV (".csv").
CommandOutput run_spectrum(const io::RunConfig& cfg);

// Thermodynamic sweep: report ("_report.json"), verdict ("_verdict.json"),
// trajectories ("_trajectories.csv").
CommandOutput run_sweep_command(const io::RunConfig& cfg);

} // namespace galspec::driver
