#pragma once

#include <iosfwd>
#include <string>

#include "kfgm/run_config.hpp"

namespace kfgm {

/// Exit codes of the command layer (also the process exit codes).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalError = 2;

/// Lists the nine presets or shows one, with admissibility and real
/// constraint rank. Throws std::invalid_argument on an unknown preset.
void cmd_bc_list(std::ostream& os);
void cmd_bc_show(const std::string& name, std::ostream& os);

/// Writes spectrum.csv; analytic columns appear only for closed-form presets
/// with a zero potential.
void cmd_spectrum(const RunConfig& cfg, const std::string& out_dir);

/// Writes observables.csv and snapshots/psi_NNNN.csv.
void cmd_evolve(const RunConfig& cfg, const std::string& out_dir);

/// Runs the invariant suite, printing one PASS/FAIL line per item.
/// Returns true iff every item passed.
bool cmd_check(const RunConfig& cfg, std::ostream& os);

/// Writes deviation.csv and scaling_summary.csv for the mc^2 doubling ladder.
void cmd_nonrel(const RunConfig& cfg, const std::string& out_dir);

}  // namespace kfgm
