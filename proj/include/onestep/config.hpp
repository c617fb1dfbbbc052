#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onestep/distributions.hpp"
#include "onestep/estimators.hpp"

namespace onestep {

/// Parsed run configuration: plain key=value lines with optional [section]
/// headers (keys below a section are addressed as section.key). Unknown
/// keys are rejected with their line number.
struct RunConfig {
  std::string functional = "isd";
  std::string target = "beta22";
  std::vector<std::string> initials; // per-command defaults when empty
  GridGeometry geom;
  std::size_t eps_points = 101;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string out_dir; // flag > config > ONESTEP_OUT_DIR > ./out

  // simplex
  std::size_t resolution = 201;
  std::vector<double> atoms = {0.0, 1.0, 2.0};
  std::vector<double> target_pmf = {0.5, 0.3, 0.2};
  std::vector<std::vector<double>> initial_pmfs = {
      {0.6, 0.3, 0.1}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};

  // [kde]
  KdeConfig kde = KdeConfig::reference();

  // [simulate]
  std::vector<std::size_t> sim_n = {2000};
  std::size_t sim_reps = 500;

  // [rates]
  std::string rates_mode = "direction"; // direction | kde
  std::string rates_direction = "uniform";
  std::vector<double> t_grid;                       // empty = geometric default
  std::vector<std::size_t> rates_n = {500, 2000, 8000};
  std::size_t rates_reps = 50;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name);

/// Resolves the output directory according to the precedence above.
std::string resolve_out_dir(const RunConfig& config,
                            const std::string& flag_value);

/// Named density presets on the given grid: "uniform", "beta22" (the
/// symmetric quadratic bump 6z(1-z) transplanted to the interval), "linear"
/// and "twobump" (equal mixture of two Gaussians at 0.3/0.7, sd 0.1,
/// truncated to the interval and renormalized on the grid).
GridDensity preset_density(const std::string& name, const GridGeometry& geom);

/// A density spec is a preset name or a CSV file path (columns z,value).
GridDensity resolve_density(const std::string& spec, const GridGeometry& geom);

/// Initial-estimate specs additionally allow "mix(SPEC,EPS)", the mixture
/// of the target toward SPEC at the given eps.
GridDensity resolve_initial(const std::string& spec, const GridDensity& target);

} // namespace onestep
