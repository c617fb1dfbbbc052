#pragma once

#include <string>
#include <vector>

#include "onestep/distributions.hpp"
#include "onestep/functionals.hpp"

namespace onestep {

/// Default floor for the score denominator. Points where the base density
/// falls below it are flagged and their mass accounted separately.
inline constexpr double kScoreFloor = 1e-12;

/// Score of the mixture likelihood W_e = G + e(Q - G) at e = 0, pointwise
/// (q - g) / max(g, floor).
struct ScoreVector {
  std::vector<double> values;
  std::vector<std::size_t> floored; // indices where g < floor
  double floored_mass = 0.0;        // direction (q) mass on floored points
};

ScoreVector score_at_zero(const GridDensity& g, const GridDensity& q,
                          double floor = kScoreFloor);
ScoreVector score_at_zero(const DiscreteDist& g, const DiscreteDist& q,
                          double floor = kScoreFloor);

/// Both sides of the score identity on a mixture likelihood path:
/// lhs is the finite-difference derivative of e -> T(W_e) at 0, rhs the
/// expectation of IF times the score under G. For a valid influence
/// function they agree, which is what ties the score characterization to
/// the directional one.
struct ScorePathCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double floored_mass = 0.0;

  std::string to_json() const;
};

/// Throws DomainError when the floored mass exceeds 1e-6 (the score is not
/// meaningful where the base density vanishes under non-vanishing q - g).
ScorePathCheck score_identity_check(const Functional& t, const GridDensity& g,
                                    const GridDensity& q, double h = 1e-4);
ScorePathCheck score_identity_check(const Functional& t, const DiscreteDist& g,
                                    const DiscreteDist& q, double h = 1e-4);

/// Chain-rule form of the pathwise derivative at eps = 1 over a discrete
/// pair: sum of the literal partials dT/dp_k at ptilde times the mass
/// changes. The partials alone are only defined up to an additive constant
/// off the simplex; pairing against a direction whose entries sum to zero
/// removes that ambiguity and recovers the influence-function value.
double discrete_chain_rule_derivative(const DiscreteDist& p,
                                      const DiscreteDist& ptilde,
                                      const Functional& t);

} // namespace onestep
