#include "onestep/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "onestep/numeric.hpp"

namespace onestep {

namespace {

// Shortest decimal form that parses back to the identical double.
std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void check_finite_nonneg(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
    if (x < 0.0) throw DomainError(std::string(what) + ": negative entry");
  }
}

} // namespace

std::vector<double> GridGeometry::midpoints() const {
  std::vector<double> zs(cells);
  for (std::size_t i = 0; i < cells; ++i) zs[i] = midpoint(i);
  return zs;
}

void GridGeometry::validate() const {
  if (!(lower < upper)) throw DomainError("grid: lower must be < upper");
  if (cells < 2) throw DomainError("grid: need at least 2 cells");
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw DomainError("grid: non-finite endpoints");
}

double integrate(std::span<const double> f, const GridGeometry& geom) {
  geom.validate();
  if (f.size() != geom.cells)
    throw ShapeError("integrate: vector length does not match the grid");
  return compensated_sum(f) * geom.step();
}

double inner_product(std::span<const double> f, std::span<const double> g,
                     const GridGeometry& geom) {
  geom.validate();
  if (f.size() != geom.cells || g.size() != geom.cells)
    throw ShapeError("inner_product: vector length does not match the grid");
  CompensatedSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * g[i]);
  return acc.value() * geom.step();
}

GridDensity::GridDensity(GridGeometry geom, std::vector<double> heights)
    : geom_(geom), values_(std::move(heights)) {
  geom_.validate();
  if (values_.size() != geom_.cells)
    throw ShapeError("density: height vector length does not match the grid");
  check_finite_nonneg(values_, "density");
  const double total = integrate(values_, geom_);
  if (!(total > 0.0)) throw DomainError("density: total mass must be positive");
  for (double& v : values_) v /= total;
}

GridDensity::GridDensity(raw_t, GridGeometry geom, std::vector<double> heights)
    : geom_(geom), values_(std::move(heights)) {
  if (values_.size() != geom_.cells)
    throw ShapeError("density: height vector length does not match the grid");
}

GridDensity GridDensity::from_function(const GridGeometry& geom,
                                       double (*fn)(double)) {
  geom.validate();
  std::vector<double> heights(geom.cells);
  for (std::size_t i = 0; i < geom.cells; ++i) heights[i] = fn(geom.midpoint(i));
  return GridDensity(geom, std::move(heights));
}

double GridDensity::value_at(double z) const {
  if (!(z >= geom_.lower && z <= geom_.upper))
    throw DomainError("value_at: point outside the grid interval");
  const double u = (z - geom_.lower) / geom_.step() - 0.5;
  if (u <= 0.0) return values_.front();
  const auto last = static_cast<double>(values_.size() - 1);
  if (u >= last) return values_.back();
  const auto i = static_cast<std::size_t>(u);
  const double t = u - static_cast<double>(i);
  return values_[i] * (1.0 - t) + values_[i + 1] * t;
}

double GridDensity::total_mass() const { return integrate(values_, geom_); }

std::string GridDensity::to_csv() const {
  std::string out = "z,value\n";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out += fmt_double(geom_.midpoint(i));
    out += ',';
    out += fmt_double(values_[i]);
    out += '\n';
  }
  return out;
}

std::string GridDensity::to_json() const {
  nlohmann::json j;
  j["lower"] = geom_.lower;
  j["upper"] = geom_.upper;
  j["values"] = values_;
  return j.dump();
}

namespace {

std::vector<std::pair<double, double>> parse_two_column_csv(
    const std::string& text, const char* expected_header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw IoError("csv: expected header '" + std::string(expected_header) +
                  "', got '" + line + "'");
  std::vector<std::pair<double, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError("csv:" + std::to_string(lineno) + ": missing comma");
    try {
      rows.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("csv:" + std::to_string(lineno) + ": bad number");
    }
  }
  return rows;
}

} // namespace

GridDensity GridDensity::from_csv(const std::string& text) {
  const auto rows = parse_two_column_csv(text, "z,value");
  if (rows.size() < 2) throw IoError("density csv: need at least 2 rows");
  const double step = rows[1].first - rows[0].first;
  if (!(step > 0.0)) throw IoError("density csv: z column must increase");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double got = rows[i].first - rows[i - 1].first;
    if (std::abs(got - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw IoError("density csv: z column is not a uniform grid");
  }
  GridGeometry geom;
  geom.lower = rows.front().first - 0.5 * step;
  geom.upper = rows.back().first + 0.5 * step;
  geom.cells = rows.size();
  std::vector<double> heights(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) heights[i] = rows[i].second;
  return GridDensity(geom, std::move(heights));
}

GridDensity GridDensity::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("density json: ") + e.what());
  }
  if (!j.contains("lower") || !j.contains("upper") || !j.contains("values"))
    throw IoError("density json: need lower, upper, values");
  GridGeometry geom;
  geom.lower = j["lower"].get<double>();
  geom.upper = j["upper"].get<double>();
  auto values = j["values"].get<std::vector<double>>();
  geom.cells = values.size();
  return GridDensity(geom, std::move(values));
}

DiscreteDist::DiscreteDist(std::vector<double> atoms, std::vector<double> masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {
  if (atoms_.size() != masses_.size())
    throw ShapeError("discrete: atoms and masses differ in length");
  if (masses_.size() < 2) throw DomainError("discrete: need at least 2 atoms");
  check_finite_nonneg(masses_, "discrete");
  for (std::size_t i = 0; i + 1 < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (atoms_[i] == atoms_[j]) throw DomainError("discrete: duplicate atom label");
  const double total = compensated_sum(masses_);
  if (!(total > 0.0)) throw DomainError("discrete: total mass must be positive");
  for (double& m : masses_) m /= total;
}

DiscreteDist::DiscreteDist(raw_t, std::vector<double> atoms,
                           std::vector<double> masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {
  if (atoms_.size() != masses_.size())
    throw ShapeError("discrete: atoms and masses differ in length");
}

DiscreteDist DiscreteDist::from_masses(std::vector<double> masses) {
  std::vector<double> atoms(masses.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = static_cast<double>(i);
  return DiscreteDist(std::move(atoms), std::move(masses));
}

std::size_t DiscreteDist::index_of(double atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == atom) return i;
  throw DomainError("discrete: unknown atom label");
}

std::string DiscreteDist::to_csv() const {
  std::string out = "atom,mass\n";
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    out += fmt_double(atoms_[i]);
    out += ',';
    out += fmt_double(masses_[i]);
    out += '\n';
  }
  return out;
}

std::string DiscreteDist::to_json() const {
  nlohmann::json j;
  j["atoms"] = atoms_;
  j["masses"] = masses_;
  return j.dump();
}

DiscreteDist DiscreteDist::from_csv(const std::string& text) {
  const auto rows = parse_two_column_csv(text, "atom,mass");
  std::vector<double> atoms, masses;
  for (const auto& [a, m] : rows) {
    atoms.push_back(a);
    masses.push_back(m);
  }
  return DiscreteDist(std::move(atoms), std::move(masses));
}

DiscreteDist DiscreteDist::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("discrete json: ") + e.what());
  }
  if (!j.contains("atoms") || !j.contains("masses"))
    throw IoError("discrete json: need atoms and masses");
  return DiscreteDist(j["atoms"].get<std::vector<double>>(),
                      j["masses"].get<std::vector<double>>());
}

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw DomainError("mix: eps must lie in [0,1]");
}

std::vector<double> mix_values(std::span<const double> p,
                               std::span<const double> q, double eps) {
  std::vector<double> out(p.size());
  const double w = 1.0 - eps;
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = w * p[i] + eps * q[i];
  return out;
}

} // namespace

GridDensity mix(const GridDensity& p, const GridDensity& ptilde, double eps) {
  if (p.geometry() != ptilde.geometry())
    throw ShapeError("mix: densities live on different grids");
  check_eps(eps);
  // Inputs are normalized, so the convex combination already integrates to
  // one; renormalizing here would perturb the exact endpoints.
  return GridDensity(raw, p.geometry(), mix_values(p.values(), ptilde.values(), eps));
}

DiscreteDist mix(const DiscreteDist& p, const DiscreteDist& ptilde, double eps) {
  if (p.size() != ptilde.size() ||
      !std::equal(p.atoms().begin(), p.atoms().end(), ptilde.atoms().begin()))
    throw ShapeError("mix: distributions live on different atom sets");
  check_eps(eps);
  return DiscreteDist(raw, std::vector<double>(p.atoms().begin(), p.atoms().end()),
                      mix_values(p.masses(), ptilde.masses(), eps));
}

double l2_distance(const GridDensity& a, const GridDensity& b) {
  if (a.geometry() != b.geometry())
    throw ShapeError("l2_distance: densities live on different grids");
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    acc.add(d * d);
  }
  return std::sqrt(acc.value() * a.geometry().step());
}

double l2_distance(const DiscreteDist& a, const DiscreteDist& b) {
  if (a.size() != b.size() ||
      !std::equal(a.atoms().begin(), a.atoms().end(), b.atoms().begin()))
    throw ShapeError("l2_distance: distributions live on different atom sets");
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.masses()[i] - b.masses()[i];
    acc.add(d * d);
  }
  return std::sqrt(acc.value());
}

SampleSet sample(const GridDensity& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample: n must be positive");
  const auto& geom = p.geometry();
  // CDF at cell edges; piecewise linear in between.
  std::vector<double> cdf(geom.cells + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < geom.cells; ++i) {
    acc.add(p.values()[i] * geom.step());
    cdf[i + 1] = acc.value();
  }
  const double total = cdf.back();
  if (!(total > 0.0)) throw DomainError("sample: density has no mass");

  CounterRng rng(seed);
  SampleSet out;
  out.seed = seed;
  out.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.next_unit() * total;
    // First edge with cdf > u; the landing cell has positive mass.
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t j = (it == cdf.end() ? geom.cells : static_cast<std::size_t>(it - cdf.begin())) - 1;
    if (j >= geom.cells) j = geom.cells - 1;
    const double mass_j = cdf[j + 1] - cdf[j];
    double z = geom.lower + static_cast<double>(j) * geom.step();
    if (mass_j > 0.0) z += (u - cdf[j]) / mass_j * geom.step();
    out.points[k] = std::clamp(z, geom.lower, geom.upper);
  }
  return out;
}

SampleSet sample(const DiscreteDist& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample: n must be positive");
  std::vector<double> cdf(p.size());
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc.add(p.masses()[i]);
    cdf[i] = acc.value();
  }
  const double total = cdf.back();
  CounterRng rng(seed);
  SampleSet out;
  out.seed = seed;
  out.points.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.next_unit() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t j =
        it == cdf.end() ? p.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    out.points[k] = p.atoms()[j];
  }
  return out;
}

DiscreteDist empirical_pmf(const SampleSet& samples,
                           std::span<const double> atoms) {
  if (samples.points.empty()) throw DomainError("empirical_pmf: no samples");
  if (atoms.size() < 2) throw DomainError("empirical_pmf: need at least 2 atoms");
  std::vector<double> counts(atoms.size(), 0.0);
  for (double z : samples.points) {
    bool found = false;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i] == z) {
        counts[i] += 1.0;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("empirical_pmf: sample value matches no atom");
  }
  const double n = static_cast<double>(samples.points.size());
  for (double& c : counts) c /= n;
  return DiscreteDist(raw, std::vector<double>(atoms.begin(), atoms.end()),
                      std::move(counts));
}

} // namespace onestep
