#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gspec::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfigError = 2,
  kConvergenceError = 3,
  kCapacityError = 4,
};

inline const std::vector<std::string> kCommands{"moments",         "simulate", "compare", "norm-scan",
                                                "constrained-fit", "freeconv", "cutnorm"};

// Fills command defaults under `config` and checks required fields.
// ValidationError on a missing seed or malformed field.
nlohmann::json resolve_config(const std::string& command, nlohmann::json config);

struct RunResult {
  std::filesystem::path dir;
  nlohmann::json report;
};

// Runs one experiment from a resolved config and writes
// <out>/<command>/<run_id>/{config.json, *.csv, report.json}.
RunResult run_experiment(const std::string& command, const nlohmann::json& resolved,
                         const std::filesystem::path& out_root, const std::string& run_id);

// Full command-line entry point. Library errors map onto the exit codes
// above and are reported as a JSON object on `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gspec::cli
