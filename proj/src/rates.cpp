#include "onestep/rates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "onestep/numeric.hpp"
#include "onestep/paths.hpp"

namespace onestep {

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ShapeError("loglog_slope: length mismatch");
  if (xs.size() < 2) throw DomainError("loglog_slope: need at least two points");
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw DomainError("loglog_slope: entries must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return ols_fit(lx, ly).slope;
}

namespace {

// Fit of log|err| on log(dist), dropping exact zeros. Provably-zero errors
// (linear functionals) come back as rounding crumbs of order eps * |T|, so
// anything below the noise floor counts as zero. NaN when fewer than two
// usable points remain.
double fit_slope(std::span<const double> dists, std::span<const double> errs,
                 double zero_tol, std::vector<std::size_t>& excluded,
                 bool& all_zero) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    if (std::abs(errs[i]) <= zero_tol) {
      excluded.push_back(i);
    } else {
      xs.push_back(dists[i]);
      ys.push_back(std::abs(errs[i]));
    }
  }
  all_zero = xs.empty();
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return loglog_slope(xs, ys);
}

double noise_floor(double t_of_p) { return 1e-13 * (1.0 + std::abs(t_of_p)); }

void check_t_grid(std::span<const double> t_grid) {
  if (t_grid.size() < 2)
    throw DomainError("direction_sweep: need at least two t values");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] <= 1.0))
      throw DomainError("direction_sweep: t values must lie in (0, 1]");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1]))
      throw DomainError("direction_sweep: t grid must be strictly decreasing");
  }
}

template <class Dist>
RateStudyResult direction_sweep_impl(const Dist& p, const Dist& q,
                                     const Functional& t,
                                     std::span<const double> t_grid) {
  check_t_grid(t_grid);
  RateStudyResult res;
  res.first_order_term = influence_pairing(t, p, q);
  res.degenerate_direction =
      std::abs(res.first_order_term) < kDegenerateDirectionTol;
  const double t_of_p = t.evaluate(p);
  for (double tt : t_grid) {
    const Dist ptilde = mix(p, q, tt);
    const auto path = make_path(p, ptilde);
    res.sweep.push_back(tt);
    res.distances.push_back(path.distance);
    res.plug_in_errors.push_back(t.evaluate(ptilde) - t_of_p);
    res.one_step_biases.push_back(exact_r2(path, t));
  }
  const double tol = noise_floor(t_of_p);
  res.slope_one_step = fit_slope(res.distances, res.one_step_biases, tol,
                                 res.excluded_one_step, res.one_step_all_zero);
  if (!res.degenerate_direction) {
    res.slope_plug_in = fit_slope(res.distances, res.plug_in_errors, tol,
                                  res.excluded_plug_in, res.plug_in_all_zero);
  }
  return res;
}

} // namespace

RateStudyResult direction_sweep(const GridDensity& p, const GridDensity& q,
                                const Functional& t,
                                std::span<const double> t_grid) {
  return direction_sweep_impl(p, q, t, t_grid);
}

RateStudyResult direction_sweep(const DiscreteDist& p, const DiscreteDist& q,
                                const Functional& t,
                                std::span<const double> t_grid) {
  return direction_sweep_impl(p, q, t, t_grid);
}

std::vector<double> geometric_t_grid(double t_max, std::size_t count) {
  if (!(t_max > 0.0 && t_max <= 1.0))
    throw DomainError("geometric_t_grid: t_max must lie in (0, 1]");
  if (count < 2) throw DomainError("geometric_t_grid: need at least two points");
  std::vector<double> grid(count);
  double t = t_max;
  for (std::size_t k = 0; k < count; ++k, t *= 0.5) grid[k] = t;
  return grid;
}

RateStudyResult kde_rate_sweep(const GridDensity& p, const Functional& t,
                               const KdeSweepConfig& config,
                               std::uint64_t seed) {
  if (config.n_grid.empty()) throw DomainError("kde_rate_sweep: empty n grid");
  for (std::size_t i = 1; i < config.n_grid.size(); ++i)
    if (!(config.n_grid[i] > config.n_grid[i - 1]))
      throw DomainError("kde_rate_sweep: n grid must be strictly increasing");
  if (config.reps < 1) throw DomainError("kde_rate_sweep: reps must be >= 1");

  RateStudyResult res;
  const double truth = t.evaluate(p);
  std::uint64_t rep_index = 0;
  for (std::size_t n : config.n_grid) {
    CompensatedSum dist_acc, plug_acc, bias_acc;
    for (std::size_t r = 0; r < config.reps; ++r, ++rep_index) {
      const std::uint64_t rep_seed = seed + rep_index;
      const SampleSet draws = sample(p, n, rep_seed);
      const GridDensity fit = kde_fit(draws, config.geom, config.kde);
      dist_acc.add(l2_distance(fit, p));
      plug_acc.add(t.evaluate(fit) - truth);
      const EstimateReport rep =
          split_one_step(t, draws, config.geom, config.kde,
                         derive_seed(rep_seed, 1));
      bias_acc.add(rep.estimate - truth);
    }
    const double inv = 1.0 / static_cast<double>(config.reps);
    res.sweep.push_back(static_cast<double>(n));
    res.distances.push_back(dist_acc.value() * inv);
    res.plug_in_errors.push_back(plug_acc.value() * inv);
    res.one_step_biases.push_back(bias_acc.value() * inv);
  }
  res.first_order_term = std::numeric_limits<double>::quiet_NaN();
  const double tol = noise_floor(truth);
  res.slope_plug_in = fit_slope(res.distances, res.plug_in_errors, tol,
                                res.excluded_plug_in, res.plug_in_all_zero);
  res.slope_one_step = fit_slope(res.distances, res.one_step_biases, tol,
                                 res.excluded_one_step, res.one_step_all_zero);
  return res;
}

std::string RateStudyResult::to_csv() const {
  std::string out = "t,distance,plug_in_error,one_step_bias\n";
  char buf[160];
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", sweep[i],
                  distances[i], plug_in_errors[i], one_step_biases[i]);
    out += buf;
  }
  return out;
}

std::string RateStudyResult::to_json() const {
  nlohmann::json j;
  auto slope_field = [](double s) {
    return std::isnan(s) ? nlohmann::json(nullptr) : nlohmann::json(s);
  };
  j["slope_plug_in"] = slope_field(slope_plug_in);
  j["slope_one_step"] = slope_field(slope_one_step);
  std::vector<std::size_t> excluded = excluded_plug_in;
  excluded.insert(excluded.end(), excluded_one_step.begin(),
                  excluded_one_step.end());
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  j["excluded_points"] = excluded;
  j["excluded_plug_in"] = excluded_plug_in;
  j["excluded_one_step"] = excluded_one_step;
  j["plug_in_all_zero"] = plug_in_all_zero;
  j["one_step_all_zero"] = one_step_all_zero;
  j["degenerate_direction"] = degenerate_direction;
  if (!std::isnan(first_order_term)) j["first_order_term"] = first_order_term;
  return j.dump(2);
}

} // namespace onestep
