#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "onestep/distributions.hpp"
#include "onestep/estimators.hpp"
#include "onestep/functionals.hpp"

namespace onestep {

/// Threshold below which a sweep direction counts as degenerate: the
/// first-order pairing of IF with the direction vanishes, so the plug-in
/// error has no linear term and its log-log slope is not fitted.
inline constexpr double kDegenerateDirectionTol = 1e-12;

struct RateStudyResult {
  std::vector<double> sweep;            // t values (direction) or n values (kde)
  std::vector<double> distances;        // l2 distance from the target
  std::vector<double> plug_in_errors;   // signed T(ptilde) - T(P)
  std::vector<double> one_step_biases;  // signed population one-step bias
  double slope_plug_in = std::numeric_limits<double>::quiet_NaN();
  double slope_one_step = std::numeric_limits<double>::quiet_NaN();
  bool plug_in_all_zero = false;
  bool one_step_all_zero = false;
  bool degenerate_direction = false;
  double first_order_term = 0.0; // pairing of IF(., P) with the direction
  std::vector<std::size_t> excluded_plug_in;  // exact-zero errors, by index
  std::vector<std::size_t> excluded_one_step;

  std::string to_csv() const;  // t,distance,plug_in_error,one_step_bias
  std::string to_json() const; // slopes + exclusions + flags
};

/// Sweeps ptilde_t = P + t (Q - P) over a descending t grid in (0,1],
/// recording the plug-in error and the exact one-step remainder at each t,
/// and fitting log-log slopes against the realized distances.
RateStudyResult direction_sweep(const GridDensity& p, const GridDensity& q,
                                const Functional& t,
                                std::span<const double> t_grid);
RateStudyResult direction_sweep(const DiscreteDist& p, const DiscreteDist& q,
                                const Functional& t,
                                std::span<const double> t_grid);

/// Geometric default sweep grid t = t_max * 2^-k, k = 0..count-1.
std::vector<double> geometric_t_grid(double t_max = 1.0, std::size_t count = 8);

struct KdeSweepConfig {
  std::vector<std::size_t> n_grid; // strictly increasing
  std::size_t reps = 1;
  GridGeometry geom;
  KdeConfig kde;
};

/// Monte Carlo sweep over sample sizes: for each n, averages the realized
/// KDE distance, the plug-in error and the split one-step bias over reps,
/// then fits slopes of log |mean error| on log mean distance. Replication
/// seeds are seed + replication index, in sweep order.
RateStudyResult kde_rate_sweep(const GridDensity& p, const Functional& t,
                               const KdeSweepConfig& config, std::uint64_t seed);

/// OLS slope of log ys on log xs; all entries must be positive.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace onestep
