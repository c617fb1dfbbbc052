#include "onestep/score_paths.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "onestep/numeric.hpp"

namespace onestep {

namespace {

ScoreVector score_from_vectors(std::span<const double> g,
                               std::span<const double> q, double floor,
                               double cell_mass_factor) {
  if (g.size() != q.size()) throw ShapeError("score_at_zero: shape mismatch");
  if (!(floor > 0.0)) throw DomainError("score_at_zero: floor must be positive");
  ScoreVector s;
  s.values.resize(g.size());
  CompensatedSum flagged;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double denom = std::max(g[i], floor);
    s.values[i] = (q[i] - g[i]) / denom;
    if (g[i] < floor) {
      s.floored.push_back(i);
      // The identity loses the direction's mass sitting where the base
      // vanishes, so that is the quantity worth accounting.
      flagged.add(q[i] * cell_mass_factor);
    }
  }
  s.floored_mass = flagged.value();
  return s;
}

} // namespace

ScoreVector score_at_zero(const GridDensity& g, const GridDensity& q,
                          double floor) {
  if (g.geometry() != q.geometry())
    throw ShapeError("score_at_zero: different grids");
  return score_from_vectors(g.values(), q.values(), floor, g.geometry().step());
}

ScoreVector score_at_zero(const DiscreteDist& g, const DiscreteDist& q,
                          double floor) {
  if (g.size() != q.size() ||
      !std::equal(g.atoms().begin(), g.atoms().end(), q.atoms().begin()))
    throw ShapeError("score_at_zero: different atom sets");
  return score_from_vectors(g.masses(), q.masses(), floor, 1.0);
}

std::string ScorePathCheck::to_json() const {
  nlohmann::json j;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["residual"] = residual;
  j["floored_mass"] = floored_mass;
  return j.dump();
}

namespace {

constexpr double kFlaggedMassLimit = 1e-6;

template <class Dist>
ScorePathCheck check_impl(const Functional& t, const Dist& g, const Dist& q,
                          double h, const ScoreVector& score,
                          std::span<const double> base_weights,
                          double weight_factor,
                          std::span<const double> influence) {
  if (score.floored_mass > kFlaggedMassLimit)
    throw DomainError("score_identity_check: flagged mass exceeds 1e-6");
  ScorePathCheck chk;
  chk.floored_mass = score.floored_mass;
  chk.lhs = gateaux_derivative_fd(t, g, q, h);
  CompensatedSum acc;
  for (std::size_t i = 0; i < base_weights.size(); ++i)
    acc.add(influence[i] * score.values[i] * base_weights[i]);
  chk.rhs = acc.value() * weight_factor;
  chk.residual = std::abs(chk.lhs - chk.rhs);
  return chk;
}

} // namespace

ScorePathCheck score_identity_check(const Functional& t, const GridDensity& g,
                                    const GridDensity& q, double h) {
  const ScoreVector s = score_at_zero(g, q);
  std::vector<double> infl(g.size());
  t.influence_on_grid(g, infl);
  return check_impl(t, g, q, h, s, g.values(), g.geometry().step(), infl);
}

ScorePathCheck score_identity_check(const Functional& t, const DiscreteDist& g,
                                    const DiscreteDist& q, double h) {
  const ScoreVector s = score_at_zero(g, q);
  std::vector<double> infl(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) infl[i] = t.influence_index(i, g);
  return check_impl(t, g, q, h, s, g.masses(), 1.0, infl);
}

double discrete_chain_rule_derivative(const DiscreteDist& p,
                                      const DiscreteDist& ptilde,
                                      const Functional& t) {
  if (p.size() != ptilde.size() ||
      !std::equal(p.atoms().begin(), p.atoms().end(), ptilde.atoms().begin()))
    throw ShapeError("discrete_chain_rule_derivative: different atom sets");
  CompensatedSum acc;
  for (std::size_t k = 0; k < p.size(); ++k)
    acc.add(t.mass_partial(k, ptilde) * (ptilde.masses()[k] - p.masses()[k]));
  return acc.value();
}

} // namespace onestep
