#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "momentous/config.hpp"

namespace momentous {

/// Shortest-safe decimal with 17 significant digits, independent of locale.
std::string format_number(double value);

/// Column names for a mode: t, classical variables, moments, diagnostics.
std::vector<std::string> csv_columns(Mode mode);

/// First line "# momentous-output/1 <config json>", then one header row,
/// then one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const RunConfig& config);

/// Endpoint, minimum uncertainty products, energy drift and status, with the
/// resolved config echoed under "config".
nlohmann::json trajectory_summary(const Trajectory& traj, const RunConfig& config);

nlohmann::json ensemble_summary(const EnsembleResult& result, const RunConfig& config);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& text);

/// Exit code for a run status: 0 completed, 2 uncertainty, 3 pole, 5 step failure.
int exit_code(Termination tag);
inline constexpr int kExitConfigError = 4;

}  // namespace momentous
