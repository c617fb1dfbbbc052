#pragma once

#include <cstdint>
#include <string>

#include "onestep/distributions.hpp"
#include "onestep/functionals.hpp"

namespace onestep {

enum class BandwidthRule { kFixed, kReference, kUndersmoothed };

/// Gaussian-kernel density estimation on the fixed grid interval, with
/// truncate-and-renormalize boundary handling. Bandwidth rules:
///   fixed(h)            h as given
///   reference           scale * sd * n^(-1/5), scale defaults to 1.06
///   undersmoothed       scale * sd * n^(-1/3); the default scale 2.66
///                       matches the reference bandwidth near n = 1000, so
///                       the two rules differ only in how they shrink.
struct KdeConfig {
  BandwidthRule rule = BandwidthRule::kReference;
  double scale = 1.06;
  double fixed_bandwidth = 0.0;

  static KdeConfig fixed(double h) {
    return {BandwidthRule::kFixed, 0.0, h};
  }
  static KdeConfig reference(double scale = 1.06) {
    return {BandwidthRule::kReference, scale, 0.0};
  }
  static KdeConfig undersmoothed(double scale = 2.66) {
    return {BandwidthRule::kUndersmoothed, scale, 0.0};
  }
};

/// Bandwidth implied by the config for the given points. Rate rules throw
/// DomainError when the sample standard deviation is zero.
double kde_bandwidth(const KdeConfig& config, std::span<const double> points);

/// Fits the density estimate at the grid midpoints. Requires n >= 2 and all
/// points inside the grid interval. Kernel mass falling outside the interval
/// is dropped and the result renormalized to integrate to one.
GridDensity kde_fit(const SampleSet& samples, const GridGeometry& geom,
                    const KdeConfig& config);

/// One estimator run: estimate = plug_in + correction by construction,
/// std_error is the sample standard deviation of the influence terms over
/// sqrt(n), and the interval is Wald 95%.
struct EstimateReport {
  double estimate = 0.0;
  double plug_in = 0.0;
  double correction = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0; // number of influence terms averaged
  bool split = false;

  std::string to_json() const;
  std::string table() const;
};

double plug_in(const Functional& t, const GridDensity& ptilde);
double plug_in(const Functional& t, const DiscreteDist& ptilde);

/// One-step estimate T(ptilde) + mean of IF(z_i, ptilde). The caller is
/// responsible for ptilde being fixed independently of eval_samples; use
/// split_one_step when both come from the same data.
EstimateReport one_step(const Functional& t, const GridDensity& ptilde,
                        const SampleSet& eval_samples);
EstimateReport one_step(const Functional& t, const DiscreteDist& ptilde,
                        const SampleSet& eval_samples);

/// Deterministic 50/50 split by seeded permutation: the density estimate is
/// fitted on the first half, influence terms averaged over the second.
/// Requires n >= 4.
EstimateReport split_one_step(const Functional& t, const SampleSet& samples,
                              const GridGeometry& geom, const KdeConfig& config,
                              std::uint64_t split_seed);

/// Nonparametric variance floor Var_P(IF(Z, P)) / n.
double efficiency_bound(const Functional& t, const GridDensity& p, std::size_t n);
double efficiency_bound(const Functional& t, const DiscreteDist& p, std::size_t n);

} // namespace onestep
