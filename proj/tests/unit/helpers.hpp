#pragma once

#include <vector>

#include "onestep/config.hpp"
#include "onestep/distributions.hpp"
#include "onestep/numeric.hpp"

namespace testutil {

inline onestep::GridGeometry unit_grid(std::size_t m = 4096) {
  return onestep::GridGeometry{0.0, 1.0, m};
}

inline onestep::GridDensity preset(const char* name, std::size_t m = 4096) {
  return onestep::preset_density(name, unit_grid(m));
}

/// Random strictly positive density, heights uniform in [0.1, 2).
inline onestep::GridDensity random_density(std::uint64_t seed,
                                           std::size_t m = 512) {
  onestep::CounterRng rng(seed);
  std::vector<double> heights(m);
  for (double& h : heights) h = 0.1 + 1.9 * rng.next_unit();
  return onestep::GridDensity(unit_grid(m), std::move(heights));
}

/// Random pmf with all masses bounded away from zero.
inline onestep::DiscreteDist random_pmf(std::uint64_t seed, std::size_t k) {
  onestep::CounterRng rng(seed);
  std::vector<double> masses(k);
  for (double& x : masses) x = 0.05 + rng.next_unit();
  return onestep::DiscreteDist::from_masses(std::move(masses));
}

} // namespace testutil
