#include "onestep/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "onestep/numeric.hpp"

namespace onestep {

double kde_bandwidth(const KdeConfig& config, std::span<const double> points) {
  if (config.rule == BandwidthRule::kFixed) {
    if (!(config.fixed_bandwidth > 0.0))
      throw DomainError("kde: fixed bandwidth must be positive");
    return config.fixed_bandwidth;
  }
  if (points.size() < 2) throw DomainError("kde: need at least 2 points");
  const double sd = std::sqrt(sample_variance(points));
  if (!(sd > 0.0))
    throw DomainError("kde: zero sample variance, rate rule undefined");
  const double n = static_cast<double>(points.size());
  const double expo = config.rule == BandwidthRule::kReference ? -0.2 : -1.0 / 3.0;
  const double h = config.scale * sd * std::pow(n, expo);
  if (!(h > 0.0)) throw DomainError("kde: bandwidth must be positive");
  return h;
}

GridDensity kde_fit(const SampleSet& samples, const GridGeometry& geom,
                    const KdeConfig& config) {
  geom.validate();
  const auto& pts = samples.points;
  if (pts.size() < 2) throw DomainError("kde: need at least 2 samples");
  for (double z : pts)
    if (!(z >= geom.lower && z <= geom.upper))
      throw DomainError("kde: sample outside the grid interval");

  const double h = kde_bandwidth(config, pts);
  const double step = geom.step();
  const std::size_t m = geom.cells;

  // Linear binning onto the midpoint grid, then convolution with a
  // truncated Gaussian window. The kernel tail beyond 10 bandwidths is
  // below 1e-21 relative and the final renormalization absorbs it.
  std::vector<double> bins(m, 0.0);
  for (double z : pts) {
    const double u = (z - geom.lower) / step - 0.5;
    if (u <= 0.0) {
      bins[0] += 1.0;
    } else if (u >= static_cast<double>(m - 1)) {
      bins[m - 1] += 1.0;
    } else {
      const auto j = static_cast<std::size_t>(u);
      const double w = u - static_cast<double>(j);
      bins[j] += 1.0 - w;
      bins[j + 1] += w;
    }
  }

  const std::size_t radius =
      std::min<std::size_t>(m - 1, static_cast<std::size_t>(std::ceil(10.0 * h / step)));
  std::vector<double> taps(radius + 1);
  for (std::size_t d = 0; d <= radius; ++d) {
    const double x = static_cast<double>(d) * step / h;
    taps[d] = std::exp(-0.5 * x * x);
  }

  std::vector<double> heights(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = bins[j];
    if (w == 0.0) continue;
    const std::size_t lo = j >= radius ? j - radius : 0;
    const std::size_t hi = std::min(m - 1, j + radius);
    for (std::size_t i = lo; i <= hi; ++i) {
      const std::size_t d = i >= j ? i - j : j - i;
      heights[i] += w * taps[d];
    }
  }
  return GridDensity(geom, std::move(heights)); // ctor renormalizes
}

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["estimate"] = estimate;
  j["plug_in"] = plug_in;
  j["correction"] = correction;
  j["std_error"] = std_error;
  j["ci_low"] = ci_low;
  j["ci_high"] = ci_high;
  j["n"] = n;
  j["split"] = split;
  return j.dump();
}

std::string EstimateReport::table() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "estimate    %.10g\n"
                "plug_in     %.10g\n"
                "correction  %.10g\n"
                "std_error   %.10g\n"
                "ci_95       [%.10g, %.10g]\n"
                "n           %zu\n"
                "split       %s\n",
                estimate, plug_in, correction, std_error, ci_low, ci_high, n,
                split ? "yes" : "no");
  return buf;
}

double plug_in(const Functional& t, const GridDensity& ptilde) {
  return t.evaluate(ptilde);
}

double plug_in(const Functional& t, const DiscreteDist& ptilde) {
  return t.evaluate(ptilde);
}

namespace {

EstimateReport report_from_terms(double plug, std::vector<double>&& terms,
                                 bool split) {
  EstimateReport rep;
  rep.plug_in = plug;
  rep.n = terms.size();
  rep.correction = mean_of(terms);
  rep.estimate = rep.plug_in + rep.correction;
  rep.std_error =
      terms.size() >= 2
          ? std::sqrt(sample_variance(terms) / static_cast<double>(terms.size()))
          : 0.0;
  rep.ci_low = rep.estimate - kWald95 * rep.std_error;
  rep.ci_high = rep.estimate + kWald95 * rep.std_error;
  rep.split = split;
  return rep;
}

} // namespace

EstimateReport one_step(const Functional& t, const GridDensity& ptilde,
                        const SampleSet& eval_samples) {
  if (eval_samples.points.empty())
    throw DomainError("one_step: no evaluation samples");
  std::vector<double> terms(eval_samples.points.size());
  t.influence_many(eval_samples.points, ptilde, terms);
  return report_from_terms(t.evaluate(ptilde), std::move(terms), false);
}

EstimateReport one_step(const Functional& t, const DiscreteDist& ptilde,
                        const SampleSet& eval_samples) {
  if (eval_samples.points.empty())
    throw DomainError("one_step: no evaluation samples");
  std::vector<double> terms(eval_samples.points.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = t.influence(eval_samples.points[i], ptilde);
  return report_from_terms(t.evaluate(ptilde), std::move(terms), false);
}

EstimateReport split_one_step(const Functional& t, const SampleSet& samples,
                              const GridGeometry& geom, const KdeConfig& config,
                              std::uint64_t split_seed) {
  const std::size_t n = samples.points.size();
  if (n < 4) throw DomainError("split_one_step: need at least 4 samples");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  CounterRng rng(split_seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }

  const std::size_t n_fit = (n + 1) / 2;
  SampleSet fit_fold{{}, split_seed};
  SampleSet eval_fold{{}, split_seed};
  fit_fold.points.reserve(n_fit);
  eval_fold.points.reserve(n - n_fit);
  for (std::size_t i = 0; i < n; ++i)
    (i < n_fit ? fit_fold : eval_fold).points.push_back(samples.points[perm[i]]);

  const GridDensity ptilde = kde_fit(fit_fold, geom, config);
  EstimateReport rep = one_step(t, ptilde, eval_fold);
  rep.split = true;
  return rep;
}

double efficiency_bound(const Functional& t, const GridDensity& p,
                        std::size_t n) {
  if (n == 0) throw DomainError("efficiency_bound: n must be positive");
  std::vector<double> infl(p.size());
  t.influence_on_grid(p, infl);
  const auto& geom = p.geometry();
  CompensatedSum e1, e2;
  for (std::size_t i = 0; i < p.size(); ++i) {
    e1.add(infl[i] * p.values()[i]);
    e2.add(infl[i] * infl[i] * p.values()[i]);
  }
  const double mean = e1.value() * geom.step();
  const double second = e2.value() * geom.step();
  return (second - mean * mean) / static_cast<double>(n);
}

double efficiency_bound(const Functional& t, const DiscreteDist& p,
                        std::size_t n) {
  if (n == 0) throw DomainError("efficiency_bound: n must be positive");
  CompensatedSum e1, e2;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = t.influence_index(i, p);
    e1.add(v * p.masses()[i]);
    e2.add(v * v * p.masses()[i]);
  }
  const double mean = e1.value();
  return (e2.value() - mean * mean) / static_cast<double>(n);
}

} // namespace onestep
