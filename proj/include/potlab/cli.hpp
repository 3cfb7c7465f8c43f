#pragma once

#include <string>

namespace potlab {

// Exit statuses: 0 success, 2 config parse/schema error, 3 computation
// error, 4 budget guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitBudget = 4;

/// Execute the experiment described by the config file. Artifacts (summary
/// document, per-rung CSV tables, plot data) land in the config's output
/// directory unless `output_dir_override` is nonempty. On failure a
/// machine-readable error document is written there as well.
int run_config(const std::string& config_path,
               const std::string& output_dir_override = "");

/// Schema and budget check without execution; prints estimated atom/cell
/// counts and memory. Same exit codes as run_config minus computation errors.
int validate_config(const std::string& config_path);

}  // namespace potlab
