#include "onestep/functionals.hpp"

#include <cmath>

#include "onestep/numeric.hpp"

namespace onestep {

void Functional::influence_many(std::span<const double> zs,
                                const GridDensity& g,
                                std::span<double> out) const {
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] = influence(zs[i], g);
}

void Functional::influence_on_grid(const GridDensity& g,
                                   std::span<double> out) const {
  const auto zs = g.geometry().midpoints();
  influence_many(zs, g, out);
}

namespace {

// T(P) = integral of the squared density; IF(z, G) = 2(g(z) - T(G)).
class IntegratedSquaredDensity final : public Functional {
public:
  std::string_view name() const override { return "isd"; }

  double evaluate(const GridDensity& g) const override {
    return inner_product(g.values(), g.values(), g.geometry());
  }

  double evaluate(const DiscreteDist& g) const override {
    CompensatedSum acc;
    for (double m : g.masses()) acc.add(m * m);
    return acc.value();
  }

  double influence(double z, const GridDensity& g) const override {
    return 2.0 * (g.value_at(z) - evaluate(g));
  }

  double influence_index(std::size_t k, const DiscreteDist& g) const override {
    return 2.0 * (g.masses()[k] - evaluate(g));
  }

  void influence_many(std::span<const double> zs, const GridDensity& g,
                      std::span<double> out) const override {
    const double t = evaluate(g);
    for (std::size_t i = 0; i < zs.size(); ++i)
      out[i] = 2.0 * (g.value_at(zs[i]) - t);
  }

  void influence_on_grid(const GridDensity& g,
                         std::span<double> out) const override {
    const double t = evaluate(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      out[i] = 2.0 * (g.values()[i] - t);
  }

  double mass_partial(std::size_t k, const DiscreteDist& g) const override {
    return 2.0 * g.masses()[k];
  }
};

// T(P) = E_P[Z]; IF(z, G) = z - E_G[Z].
class MeanFunctional final : public Functional {
public:
  std::string_view name() const override { return "mean"; }
  bool linear_in_density() const override { return true; }

  double evaluate(const GridDensity& g) const override {
    const auto& geom = g.geometry();
    CompensatedSum acc;
    for (std::size_t i = 0; i < g.size(); ++i)
      acc.add(geom.midpoint(i) * g.values()[i]);
    return acc.value() * geom.step();
  }

  double evaluate(const DiscreteDist& g) const override {
    CompensatedSum acc;
    for (std::size_t i = 0; i < g.size(); ++i)
      acc.add(g.atoms()[i] * g.masses()[i]);
    return acc.value();
  }

  double influence(double z, const GridDensity& g) const override {
    if (!(z >= g.geometry().lower && z <= g.geometry().upper))
      throw DomainError("influence: point outside the grid interval");
    return z - evaluate(g);
  }

  double influence_index(std::size_t k, const DiscreteDist& g) const override {
    return g.atoms()[k] - evaluate(g);
  }

  void influence_many(std::span<const double> zs, const GridDensity& g,
                      std::span<double> out) const override {
    const double m = evaluate(g);
    const auto& geom = g.geometry();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (!(zs[i] >= geom.lower && zs[i] <= geom.upper))
        throw DomainError("influence: point outside the grid interval");
      out[i] = zs[i] - m;
    }
  }

  void influence_on_grid(const GridDensity& g,
                         std::span<double> out) const override {
    const double m = evaluate(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      out[i] = g.geometry().midpoint(i) - m;
  }

  double mass_partial(std::size_t k, const DiscreteDist& g) const override {
    return g.atoms()[k];
  }
};

const IntegratedSquaredDensity kIsd;
const MeanFunctional kMean;

} // namespace

const Functional& functional_by_name(std::string_view name) {
  if (name == "isd") return kIsd;
  if (name == "mean") return kMean;
  throw DomainError("unknown functional '" + std::string(name) + "'");
}

std::vector<std::string_view> functional_names() { return {"isd", "mean"}; }

namespace {

void check_fd_step(double h) {
  if (!(h > 0.0 && h < 0.5))
    throw DomainError("gateaux_derivative_fd: h must lie in (0, 0.5)");
}

std::vector<double> raw_mix(std::span<const double> g, std::span<const double> q,
                            double eps) {
  std::vector<double> out(g.size());
  const double w = 1.0 - eps;
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = w * g[i] + eps * q[i];
  return out;
}

} // namespace

double gateaux_derivative_fd(const Functional& t, const GridDensity& g,
                             const GridDensity& q, double h) {
  if (g.geometry() != q.geometry())
    throw ShapeError("gateaux_derivative_fd: different grids");
  check_fd_step(h);
  const GridDensity up(raw, g.geometry(), raw_mix(g.values(), q.values(), h));
  const GridDensity dn(raw, g.geometry(), raw_mix(g.values(), q.values(), -h));
  return (t.evaluate(up) - t.evaluate(dn)) / (2.0 * h);
}

double gateaux_derivative_fd(const Functional& t, const DiscreteDist& g,
                             const DiscreteDist& q, double h) {
  if (g.size() != q.size())
    throw ShapeError("gateaux_derivative_fd: different atom sets");
  check_fd_step(h);
  std::vector<double> atoms(g.atoms().begin(), g.atoms().end());
  const DiscreteDist up(raw, atoms, raw_mix(g.masses(), q.masses(), h));
  const DiscreteDist dn(raw, atoms, raw_mix(g.masses(), q.masses(), -h));
  return (t.evaluate(up) - t.evaluate(dn)) / (2.0 * h);
}

double influence_pairing(const Functional& t, const GridDensity& g,
                         const GridDensity& q) {
  if (g.geometry() != q.geometry())
    throw ShapeError("influence_pairing: different grids");
  std::vector<double> infl(g.size());
  t.influence_on_grid(g, infl);
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.size(); ++i)
    acc.add(infl[i] * (q.values()[i] - g.values()[i]));
  return acc.value() * g.geometry().step();
}

double influence_pairing(const Functional& t, const DiscreteDist& g,
                         const DiscreteDist& q) {
  if (g.size() != q.size())
    throw ShapeError("influence_pairing: different atom sets");
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.size(); ++i)
    acc.add(t.influence_index(i, g) * (q.masses()[i] - g.masses()[i]));
  return acc.value();
}

double influence_centering_residual(const Functional& t, const GridDensity& g) {
  std::vector<double> infl(g.size());
  t.influence_on_grid(g, infl);
  return inner_product(infl, g.values(), g.geometry());
}

double influence_centering_residual(const Functional& t, const DiscreteDist& g) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < g.size(); ++i)
    acc.add(t.influence_index(i, g) * g.masses()[i]);
  return acc.value();
}

} // namespace onestep
