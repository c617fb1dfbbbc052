#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "onestep/distributions.hpp"

namespace onestep {

/// A real-valued functional T of a distribution together with its analytic
/// influence function IF(z, G). Implementations must keep the centering
/// identity: the influence function integrates to zero under G.
///
/// evaluate() must be well defined for any cell-value vector, including the
/// slightly out-of-simplex probes used by finite-difference checks.
class Functional {
public:
  virtual ~Functional() = default;

  virtual std::string_view name() const = 0;

  /// True when T is linear in the density, in which case the one-step
  /// correction cancels the choice of the initial estimate exactly.
  virtual bool linear_in_density() const { return false; }

  virtual double evaluate(const GridDensity& g) const = 0;
  virtual double evaluate(const DiscreteDist& g) const = 0;

  /// IF(z, G) at an interior point of the grid interval.
  virtual double influence(double z, const GridDensity& g) const = 0;

  /// IF at an atom, addressed by its index.
  virtual double influence_index(std::size_t k, const DiscreteDist& g) const = 0;

  /// IF at an atom, addressed by its label.
  double influence(double atom, const DiscreteDist& g) const {
    return influence_index(g.index_of(atom), g);
  }

  /// IF(z_i, G) at every point of `zs`. Overridden to hoist the O(m)
  /// evaluation of T(G) out of the loop.
  virtual void influence_many(std::span<const double> zs, const GridDensity& g,
                              std::span<double> out) const;

  /// IF evaluated at the grid midpoints, straight from the stored heights.
  virtual void influence_on_grid(const GridDensity& g,
                                 std::span<double> out) const;

  /// Literal partial derivative dT/dp_k at the given pmf. This is the
  /// chain-rule form, well defined even though marginal mass changes leave
  /// the simplex; its pairing with a direction whose entries sum to zero
  /// matches the influence-function derivative.
  virtual double mass_partial(std::size_t k, const DiscreteDist& g) const = 0;
};

/// Registry lookup by name; "isd" (integrated squared density) and "mean"
/// ship. Throws DomainError for unknown names.
const Functional& functional_by_name(std::string_view name);
std::vector<std::string_view> functional_names();

/// Central finite difference of eps -> T(G + eps(Q - G)) at eps = 0. The
/// probe evaluates T on raw mixtures, which may leave the simplex for
/// eps < 0; that is intentional. Requires 0 < h < 0.5.
double gateaux_derivative_fd(const Functional& t, const GridDensity& g,
                             const GridDensity& q, double h = 1e-4);
double gateaux_derivative_fd(const Functional& t, const DiscreteDist& g,
                             const DiscreteDist& q, double h = 1e-4);

/// The pairing integral IF(., g) against (q - g): the analytic value of the
/// Gateaux derivative above.
double influence_pairing(const Functional& t, const GridDensity& g,
                         const GridDensity& q);
double influence_pairing(const Functional& t, const DiscreteDist& g,
                         const DiscreteDist& q);

/// Centering diagnostic: the integral of IF(z, G) under G itself (zero for a
/// valid influence function, up to quadrature).
double influence_centering_residual(const Functional& t, const GridDensity& g);
double influence_centering_residual(const Functional& t, const DiscreteDist& g);

} // namespace onestep
