#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "onestep/errors.hpp"

namespace onestep {

/// Uniform midpoint grid over a closed interval. Densities are stored as
/// heights at the `cells` midpoints and integrated with the midpoint rule,
/// which is exact for functions constant on each cell.
struct GridGeometry {
  double lower = 0.0;
  double upper = 1.0;
  std::size_t cells = 4096;

  double step() const { return (upper - lower) / static_cast<double>(cells); }
  double midpoint(std::size_t i) const {
    return lower + (static_cast<double>(i) + 0.5) * step();
  }
  std::vector<double> midpoints() const;
  bool operator==(const GridGeometry&) const = default;

  void validate() const;
};

/// Tag for internal constructors that skip validation / renormalization
/// (finite-difference probes, mixtures of already-normalized inputs).
struct raw_t {
  explicit raw_t() = default;
};
inline constexpr raw_t raw{};

/// Midpoint quadrature of an arbitrary cell-value vector over the grid.
double integrate(std::span<const double> f, const GridGeometry& geom);

/// Midpoint quadrature of the pointwise product of two cell-value vectors.
double inner_product(std::span<const double> f, std::span<const double> g,
                     const GridGeometry& geom);

/// A probability density on a uniform grid: nonnegative midpoint heights
/// whose quadrature equals one. The public constructor normalizes by the
/// quadrature total, so Eq-style pointwise mixtures stay literal convex
/// combinations of heights.
class GridDensity {
public:
  GridDensity(GridGeometry geom, std::vector<double> heights);
  GridDensity(raw_t, GridGeometry geom, std::vector<double> heights);

  static GridDensity from_function(const GridGeometry& geom,
                                   double (*fn)(double));

  const GridGeometry& geometry() const { return geom_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Piecewise-linear interpolation of the midpoint heights, clamped on the
  /// half-cells next to the boundary. Throws DomainError outside the
  /// interval.
  double value_at(double z) const;

  /// Quadrature total of the stored heights (1 up to rounding).
  double total_mass() const;

  std::string to_csv() const;
  std::string to_json() const;
  static GridDensity from_csv(const std::string& text);
  static GridDensity from_json(const std::string& text);

private:
  GridGeometry geom_;
  std::vector<double> values_;
};

/// A probability mass function over K numeric atom labels.
class DiscreteDist {
public:
  DiscreteDist(std::vector<double> atoms, std::vector<double> masses);
  DiscreteDist(raw_t, std::vector<double> atoms, std::vector<double> masses);

  /// Atoms 0..K-1 with the given masses.
  static DiscreteDist from_masses(std::vector<double> masses);

  std::span<const double> atoms() const { return atoms_; }
  std::span<const double> masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }

  /// Index of the atom with the given label; DomainError when absent.
  std::size_t index_of(double atom) const;

  std::string to_csv() const;
  std::string to_json() const;
  static DiscreteDist from_csv(const std::string& text);
  static DiscreteDist from_json(const std::string& text);

private:
  std::vector<double> atoms_;
  std::vector<double> masses_;
};

/// Draws recorded together with the seed that produced them.
struct SampleSet {
  std::vector<double> points;
  std::uint64_t seed = 0;
};

/// Pointwise convex combination (1-eps)*P + eps*Ptilde. Endpoints are exact:
/// eps=0 reproduces P and eps=1 reproduces Ptilde bit for bit.
GridDensity mix(const GridDensity& p, const GridDensity& ptilde, double eps);
DiscreteDist mix(const DiscreteDist& p, const DiscreteDist& ptilde, double eps);

/// L2 distance between densities (quadrature) or mass vectors (Euclidean).
double l2_distance(const GridDensity& a, const GridDensity& b);
double l2_distance(const DiscreteDist& a, const DiscreteDist& b);

/// Inverse-CDF draws from the piecewise-linear grid CDF. Deterministic:
/// identical (P, n, seed) give bitwise-identical output.
SampleSet sample(const GridDensity& p, std::size_t n, std::uint64_t seed);

/// Inverse-CDF draws from a discrete distribution; points are atom labels.
SampleSet sample(const DiscreteDist& p, std::size_t n, std::uint64_t seed);

/// Empirical pmf of the samples over the given atom labels; every sample
/// point must match a label exactly.
DiscreteDist empirical_pmf(const SampleSet& samples,
                           std::span<const double> atoms);

} // namespace onestep
