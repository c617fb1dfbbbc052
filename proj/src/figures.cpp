#include "onestep/figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "onestep/numeric.hpp"
#include "onestep/svg.hpp"

namespace onestep {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const Functional& resolve_functional(const RunConfig& config) {
  try {
    return functional_by_name(config.functional);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

} // namespace

std::string write_file_atomic(const std::string& dir, const std::string& name,
                              const std::string& content) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir + ": cannot create output directory");
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = fs::path(dir) / (name + ".tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp_path.string() + ": cannot open for writing");
    out << content;
    if (!out) throw IoError(tmp_path.string() + ": write failed");
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) throw IoError(final_path.string() + ": rename failed");
  return final_path.string();
}

CmdResult cmd_path(const RunConfig& config) {
  const Functional& t = resolve_functional(config);
  const GridDensity target = resolve_density(config.target, config.geom);
  std::vector<std::string> initials = config.initials;
  if (initials.empty()) initials = {"linear"};
  if (initials.size() != 1)
    throw ConfigError("path: exactly one initial density must be configured");
  const GridDensity initial = resolve_initial(initials[0], target);
  const Path path = make_path(target, initial);
  const std::string out_dir = resolve_out_dir(config, "");

  std::string densities = "eps,z,density\n";
  for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const GridDensity p_eps = mix(path.target, path.initial, eps);
    for (std::size_t i = 0; i < p_eps.size(); ++i) {
      densities += fmt17(eps);
      densities += ',';
      densities += fmt17(config.geom.midpoint(i));
      densities += ',';
      densities += fmt17(p_eps.values()[i]);
      densities += '\n';
    }
  }

  const VCurve curve = v_curve(path, t, config.eps_points);
  const double v1 = t.evaluate(path.initial);
  const double slope = pathwise_derivative_at_one(path, t);
  const double intercept = v1 - slope;

  std::string vcsv = "eps,delta,value,tangent_value,one_step_intercept\n";
  SvgSeries curve_series{"T along the path", curve.eps, curve.values, false};
  SvgSeries tangent_series{"tangent at eps=1", curve.eps, {}, false};
  tangent_series.ys.resize(curve.eps.size());
  for (std::size_t i = 0; i < curve.eps.size(); ++i) {
    const double tangent = v1 + slope * (curve.eps[i] - 1.0);
    tangent_series.ys[i] = tangent;
    vcsv += fmt17(curve.eps[i]);
    vcsv += ',';
    vcsv += fmt17(curve.deltas[i]);
    vcsv += ',';
    vcsv += fmt17(curve.values[i]);
    vcsv += ',';
    vcsv += fmt17(tangent);
    vcsv += ',';
    vcsv += fmt17(intercept);
    vcsv += '\n';
  }
  SvgSeries marker{"one-step intercept", {0.0}, {intercept}, true};
  const std::vector<SvgSeries> series = {curve_series, tangent_series, marker};
  const std::string svg = render_line_chart(
      "Functional along the mixture path", "eps", "T(P_eps)", series);

  CmdResult result;
  result.files.push_back(write_file_atomic(out_dir, "fig1_densities.csv", densities));
  result.files.push_back(write_file_atomic(out_dir, "fig1_vcurve.csv", vcsv));
  result.files.push_back(write_file_atomic(out_dir, "fig1.svg", svg));
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "path: T(target)=%.10g T(initial)=%.10g slope(1)=%.10g "
                "one_step_intercept=%.10g distance=%.10g\n",
                t.evaluate(path.target), v1, slope, intercept, path.distance);
  result.summary = buf;
  return result;
}

CmdResult cmd_multipath(const RunConfig& config) {
  const Functional& t = resolve_functional(config);
  const GridDensity target = resolve_density(config.target, config.geom);
  std::vector<GridDensity> initials;
  std::vector<std::string> labels;
  if (config.initials.empty()) {
    // Mixtures of the target toward the uniform at shrinking eps.
    const GridDensity toward = preset_density("uniform", config.geom);
    for (double eps : {1.0, 2.0 / 3.0, 1.0 / 3.0}) {
      initials.push_back(mix(target, toward, eps));
      char label[48];
      std::snprintf(label, sizeof(label), "mix(uniform,%.4g)", eps);
      labels.push_back(label);
    }
  } else {
    for (const auto& spec : config.initials) {
      initials.push_back(resolve_initial(spec, target));
      labels.push_back(spec);
    }
  }
  if (initials.size() < 2)
    throw ConfigError("multipath: need at least two initial densities");

  const std::string out_dir = resolve_out_dir(config, "");
  std::string csv = "path_id,eps,distance_from_P,value,tangent,intercept\n";
  std::vector<SvgSeries> series;
  std::string warnings;
  std::size_t path_id = 0;
  for (std::size_t k = 0; k < initials.size(); ++k) {
    const Path path = make_path(target, initials[k]);
    if (path.distance == 0.0) {
      warnings += "multipath: skipping degenerate path '" + labels[k] +
                  "' (distance 0)\n";
      continue;
    }
    const VCurve curve = v_curve(path, t, config.eps_points);
    const double v1 = t.evaluate(path.initial);
    const double slope = pathwise_derivative_at_one(path, t);
    const double intercept = v1 - slope;
    SvgSeries curve_series{labels[k], curve.deltas, curve.values, false};
    SvgSeries tangent_series{labels[k] + " tangent", curve.deltas, {}, false};
    tangent_series.ys.resize(curve.eps.size());
    for (std::size_t i = 0; i < curve.eps.size(); ++i) {
      const double tangent = v1 + slope * (curve.eps[i] - 1.0);
      tangent_series.ys[i] = tangent;
      csv += std::to_string(path_id);
      csv += ',';
      csv += fmt17(curve.eps[i]);
      csv += ',';
      csv += fmt17(curve.deltas[i]);
      csv += ',';
      csv += fmt17(curve.values[i]);
      csv += ',';
      csv += fmt17(tangent);
      csv += ',';
      csv += fmt17(intercept);
      csv += '\n';
    }
    series.push_back(std::move(curve_series));
    series.push_back(std::move(tangent_series));
    ++path_id;
  }
  if (path_id < 2)
    throw ConfigError("multipath: fewer than two non-degenerate paths");

  const std::string svg = render_line_chart(
      "Tangent approximations over several paths", "distance from target",
      "T(P_eps)", series);

  CmdResult result;
  result.files.push_back(write_file_atomic(out_dir, "fig2_curves.csv", csv));
  result.files.push_back(write_file_atomic(out_dir, "fig2.svg", svg));
  result.summary = warnings + "multipath: wrote " + std::to_string(path_id) +
                   " paths\n";
  return result;
}

std::vector<SimplexRow> simplex_surface(std::size_t resolution) {
  if (resolution < 2) throw DomainError("simplex: resolution must be >= 2");
  std::vector<SimplexRow> rows;
  const double res = static_cast<double>(resolution);
  for (std::size_t i = 0; i <= resolution; ++i) {
    for (std::size_t j = 0; j + i <= resolution; ++j) {
      const double q1 = static_cast<double>(i) / res;
      const double q2 = static_cast<double>(j) / res;
      // symmetric form keeps T(q1,q2) == T(q2,q1) bit for bit
      const double q3 = 1.0 - (q1 + q2);
      rows.push_back({q1, q2, q1 * q1 + q2 * q2 + q3 * q3});
    }
  }
  return rows;
}

CmdResult cmd_simplex(const RunConfig& config) {
  if (config.functional != "isd")
    throw ConfigError("simplex: only the isd functional is supported");
  if (config.atoms.size() != 3 || config.target_pmf.size() != 3)
    throw ConfigError("simplex: unsupported atom count (need K = 3)");
  for (const auto& pmf : config.initial_pmfs)
    if (pmf.size() != 3)
      throw ConfigError("simplex: unsupported atom count (need K = 3)");

  const auto rows = simplex_surface(config.resolution);
  std::string surface = "q1,q2,T\n";
  for (const auto& row : rows) {
    surface += fmt17(row.q1);
    surface += ',';
    surface += fmt17(row.q2);
    surface += ',';
    surface += fmt17(row.value);
    surface += '\n';
  }

  const DiscreteDist target(std::vector<double>(config.atoms),
                            std::vector<double>(config.target_pmf));
  std::string paths_csv = "path_id,eps,q1,q2,dist_euclid_2d,dist_l2\n";
  std::vector<SvgSeries> overlays;
  for (std::size_t k = 0; k < config.initial_pmfs.size(); ++k) {
    const DiscreteDist initial(std::vector<double>(config.atoms),
                               std::vector<double>(config.initial_pmfs[k]));
    SvgSeries line{"path " + std::to_string(k), {}, {}, false};
    for (std::size_t s = 0; s < config.eps_points; ++s) {
      const double eps =
          static_cast<double>(s) / static_cast<double>(config.eps_points - 1);
      const DiscreteDist p_eps = mix(target, initial, eps);
      const double q1 = p_eps.masses()[0];
      const double q2 = p_eps.masses()[1];
      const double d1 = q1 - target.masses()[0];
      const double d2 = q2 - target.masses()[1];
      paths_csv += std::to_string(k);
      paths_csv += ',';
      paths_csv += fmt17(eps);
      paths_csv += ',';
      paths_csv += fmt17(q1);
      paths_csv += ',';
      paths_csv += fmt17(q2);
      paths_csv += ',';
      paths_csv += fmt17(std::sqrt(d1 * d1 + d2 * d2));
      paths_csv += ',';
      paths_csv += fmt17(l2_distance(target, p_eps));
      paths_csv += '\n';
      line.xs.push_back(q1);
      line.ys.push_back(q2);
    }
    overlays.push_back(std::move(line));
  }

  // Downsample the heatmap so the SVG stays a reasonable size.
  const std::size_t max_cells_per_axis = 60;
  const std::size_t stride =
      std::max<std::size_t>(1, config.resolution / max_cells_per_axis);
  std::vector<HeatCell> cells;
  const double res = static_cast<double>(config.resolution);
  for (std::size_t i = 0; i <= config.resolution; i += stride)
    for (std::size_t j = 0; j + i <= config.resolution; j += stride) {
      const double q1 = static_cast<double>(i) / res;
      const double q2 = static_cast<double>(j) / res;
      const double q3 = 1.0 - (q1 + q2);
      cells.push_back({q1, q2, q1 * q1 + q2 * q2 + q3 * q3});
    }
  const double cell = static_cast<double>(stride) / res;
  const std::string svg =
      render_heatmap("Sum of squared masses over the 3-atom simplex",
                     "mass at first atom", "mass at second atom", cells, cell,
                     cell, overlays);

  const std::string out_dir = resolve_out_dir(config, "");
  CmdResult result;
  result.files.push_back(write_file_atomic(out_dir, "fig3_surface.csv", surface));
  result.files.push_back(write_file_atomic(out_dir, "fig3_paths.csv", paths_csv));
  result.files.push_back(write_file_atomic(out_dir, "fig3.svg", svg));
  result.summary = "simplex: wrote " + std::to_string(rows.size()) +
                   " surface rows and " +
                   std::to_string(config.initial_pmfs.size()) + " paths\n";
  return result;
}

namespace {

struct EstimatorStats {
  std::vector<double> estimates;
  std::vector<double> errors;
  std::size_t covered = 0;

  void add(double estimate, double truth, double ci_low, double ci_high) {
    estimates.push_back(estimate);
    errors.push_back(estimate - truth);
    if (ci_low <= truth && truth <= ci_high) ++covered;
  }
  double mean_bias() const { return mean_of(errors); }
  double variance() const { return sample_variance(estimates); }
  double mse() const {
    CompensatedSum acc;
    for (double e : errors) acc.add(e * e);
    return acc.value() / static_cast<double>(errors.size());
  }
  double coverage() const {
    return static_cast<double>(covered) / static_cast<double>(estimates.size());
  }
};

} // namespace

CmdResult cmd_simulate(const RunConfig& config) {
  const Functional& t = resolve_functional(config);
  if (config.sim_reps < 2)
    throw DomainError("simulate: need reps >= 2, variance is undefined otherwise");
  const GridDensity target = resolve_density(config.target, config.geom);
  const double truth = t.evaluate(target);

  std::string csv = "n,estimator,mean_bias,variance,mse,coverage\n";
  nlohmann::json summary;
  summary["functional"] = config.functional;
  summary["target"] = config.target;
  summary["truth"] = truth;
  summary["reps"] = config.sim_reps;
  summary["seed"] = config.seed;
  summary["split"] = !t.linear_in_density();
  nlohmann::json per_n = nlohmann::json::array();

  std::string text;
  std::uint64_t rep_index = 0;
  for (std::size_t n : config.sim_n) {
    EstimatorStats plug_stats, one_stats;
    for (std::size_t r = 0; r < config.sim_reps; ++r, ++rep_index) {
      const std::uint64_t rep_seed = config.seed + rep_index;
      const SampleSet draws = sample(target, n, rep_seed);
      if (t.linear_in_density()) {
        // Linear functionals need no smoothing for the plug-in and no
        // splitting for the one-step: the correction cancels the initial
        // estimate exactly, so both reduce to the empirical value.
        const double plug = mean_of(draws.points);
        const GridDensity fit = kde_fit(draws, config.geom, config.kde);
        const EstimateReport rep = one_step(t, fit, draws);
        plug_stats.add(plug, truth, plug - kWald95 * rep.std_error,
                       plug + kWald95 * rep.std_error);
        one_stats.add(rep.estimate, truth, rep.ci_low, rep.ci_high);
      } else {
        const GridDensity fit = kde_fit(draws, config.geom, config.kde);
        const double plug = t.evaluate(fit);
        std::vector<double> terms(draws.points.size());
        t.influence_many(draws.points, fit, terms);
        const double se_plug =
            std::sqrt(sample_variance(terms) / static_cast<double>(terms.size()));
        plug_stats.add(plug, truth, plug - kWald95 * se_plug,
                       plug + kWald95 * se_plug);
        const EstimateReport rep = split_one_step(
            t, draws, config.geom, config.kde, derive_seed(rep_seed, 1));
        one_stats.add(rep.estimate, truth, rep.ci_low, rep.ci_high);
      }
    }

    const double bound = efficiency_bound(t, target, n);
    for (const auto& [name, stats] :
         {std::pair<const char*, const EstimatorStats&>{"plug_in", plug_stats},
          std::pair<const char*, const EstimatorStats&>{"one_step", one_stats}}) {
      csv += std::to_string(n);
      csv += ',';
      csv += name;
      csv += ',';
      csv += fmt17(stats.mean_bias());
      csv += ',';
      csv += fmt17(stats.variance());
      csv += ',';
      csv += fmt17(stats.mse());
      csv += ',';
      csv += fmt17(stats.coverage());
      csv += '\n';
      char line[256];
      std::snprintf(line, sizeof(line),
                    "n=%zu %-8s bias=%+.3e var=%.3e mse=%.3e coverage=%.3f\n", n,
                    name, stats.mean_bias(), stats.variance(), stats.mse(),
                    stats.coverage());
      text += line;
    }
    nlohmann::json row;
    row["n"] = n;
    row["efficiency_bound"] = bound;
    row["plug_in"] = {{"mean_bias", plug_stats.mean_bias()},
                      {"variance", plug_stats.variance()},
                      {"mse", plug_stats.mse()},
                      {"coverage", plug_stats.coverage()}};
    row["one_step"] = {{"mean_bias", one_stats.mean_bias()},
                       {"variance", one_stats.variance()},
                       {"mse", one_stats.mse()},
                       {"coverage", one_stats.coverage()},
                       {"mse_over_bound", one_stats.mse() / bound}};
    per_n.push_back(row);
  }
  summary["results"] = per_n;

  const std::string out_dir = resolve_out_dir(config, "");
  CmdResult result;
  result.files.push_back(write_file_atomic(out_dir, "sim_table.csv", csv));
  result.files.push_back(
      write_file_atomic(out_dir, "sim_summary.json", summary.dump(2) + "\n"));
  result.summary = text;
  return result;
}

CmdResult cmd_rates(const RunConfig& config) {
  const Functional& t = resolve_functional(config);
  const GridDensity target = resolve_density(config.target, config.geom);
  RateStudyResult res;
  if (config.rates_mode == "direction") {
    const GridDensity q = resolve_density(config.rates_direction, config.geom);
    const std::vector<double> t_grid =
        config.t_grid.empty() ? geometric_t_grid() : config.t_grid;
    res = direction_sweep(target, q, t, t_grid);
  } else {
    KdeSweepConfig sweep;
    sweep.n_grid = config.rates_n;
    sweep.reps = config.rates_reps;
    sweep.geom = config.geom;
    sweep.kde = config.kde;
    res = kde_rate_sweep(target, t, sweep, config.seed);
  }

  const std::string out_dir = resolve_out_dir(config, "");
  CmdResult result;
  result.files.push_back(write_file_atomic(out_dir, "rates.csv", res.to_csv()));
  result.files.push_back(
      write_file_atomic(out_dir, "rates.json", res.to_json() + "\n"));
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "rates(%s): slope_plug_in=%.6g slope_one_step=%.6g%s%s\n",
                config.rates_mode.c_str(), res.slope_plug_in, res.slope_one_step,
                res.degenerate_direction ? " [degenerate direction]" : "",
                res.one_step_all_zero ? " [one-step errors all zero]" : "");
  result.summary = buf;
  return result;
}

CmdResult run_command(const std::string& command, const RunConfig& config) {
  const bool stochastic =
      command == "simulate" || (command == "rates" && config.rates_mode == "kde");
  if (stochastic && !config.has_seed)
    throw ConfigError(command + ": a seed is required (--seed or seed=)");
  if (command == "path") return cmd_path(config);
  if (command == "multipath") return cmd_multipath(config);
  if (command == "simplex") return cmd_simplex(config);
  if (command == "simulate") return cmd_simulate(config);
  if (command == "rates") return cmd_rates(config);
  throw ConfigError("unknown command '" + command + "'");
}

} // namespace onestep
