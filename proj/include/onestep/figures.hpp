#pragma once

#include <string>
#include <vector>

#include "onestep/config.hpp"
#include "onestep/paths.hpp"
#include "onestep/rates.hpp"

namespace onestep {

struct CmdResult {
  std::vector<std::string> files; // paths written, in order
  std::string summary;            // human-readable notes for the terminal
};

struct SimplexRow {
  double q1 = 0.0;
  double q2 = 0.0;
  double value = 0.0;
};

/// Surface of the sum of squared masses over pmfs on three atoms, indexed by
/// the first two masses. `resolution` counts subdivisions per axis, so the
/// grid points are i/resolution and include the vertices and (for resolution
/// divisible by 3) the barycenter. Rows outside the simplex are omitted.
std::vector<SimplexRow> simplex_surface(std::size_t resolution);

CmdResult cmd_path(const RunConfig& config);
CmdResult cmd_multipath(const RunConfig& config);
CmdResult cmd_simplex(const RunConfig& config);
CmdResult cmd_simulate(const RunConfig& config);
CmdResult cmd_rates(const RunConfig& config);

/// Dispatches one of path|multipath|simplex|simulate|rates. Stochastic
/// commands (simulate, rates in kde mode) require a seed in the config.
CmdResult run_command(const std::string& command, const RunConfig& config);

/// Write-then-rename file creation; returns the final path.
std::string write_file_atomic(const std::string& dir, const std::string& name,
                              const std::string& content);

} // namespace onestep
