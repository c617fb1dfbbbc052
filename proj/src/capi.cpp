#include "onestep/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "onestep/config.hpp"
#include "onestep/distributions.hpp"
#include "onestep/estimators.hpp"
#include "onestep/figures.hpp"
#include "onestep/functionals.hpp"
#include "onestep/paths.hpp"
#include "onestep/rates.hpp"

using namespace onestep;

struct onestep_density {
  GridDensity value;
};
struct onestep_discrete {
  DiscreteDist value;
};
struct onestep_samples {
  SampleSet value;
};

namespace {

thread_local std::string g_last_error;

onestep_status record(onestep_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class Fn>
onestep_status guarded(Fn&& fn) {
  try {
    fn();
    return ONESTEP_OK;
  } catch (const ShapeError& e) {
    return record(ONESTEP_ERR_SHAPE, e.what());
  } catch (const ConfigError& e) {
    return record(ONESTEP_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return record(ONESTEP_ERR_IO, e.what());
  } catch (const DomainError& e) {
    return record(ONESTEP_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return record(ONESTEP_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(ONESTEP_ERR_INTERNAL, "unknown error");
  }
}

onestep_status require(bool ok, const char* what) {
  return ok ? ONESTEP_OK : record(ONESTEP_ERR_INVALID_ARGUMENT, what);
}

KdeConfig to_config(const onestep_kde_config* c) {
  if (!c) return KdeConfig::reference();
  switch (c->rule) {
    case 0:
      return KdeConfig::fixed(c->fixed_h);
    case 1:
      return c->scale > 0.0 ? KdeConfig::reference(c->scale)
                            : KdeConfig::reference();
    case 2:
      return c->scale > 0.0 ? KdeConfig::undersmoothed(c->scale)
                            : KdeConfig::undersmoothed();
    default:
      throw DomainError("kde config: rule must be 0, 1 or 2");
  }
}

void fill_report(const EstimateReport& rep, onestep_report* out) {
  out->estimate = rep.estimate;
  out->plug_in = rep.plug_in;
  out->correction = rep.correction;
  out->std_error = rep.std_error;
  out->ci_low = rep.ci_low;
  out->ci_high = rep.ci_high;
  out->n = rep.n;
  out->split = rep.split ? 1 : 0;
}

} // namespace

extern "C" {

const char* onestep_version(void) { return "0.1.0"; }

const char* onestep_last_error(void) { return g_last_error.c_str(); }

void onestep_string_free(char* s) { std::free(s); }

onestep_status onestep_density_create(double lower, double upper,
                                      const double* heights, size_t m,
                                      onestep_density** out) {
  if (auto st = require(heights && out, "null pointer")) return st;
  return guarded([&] {
    GridGeometry geom{lower, upper, m};
    *out = new onestep_density{
        GridDensity(geom, std::vector<double>(heights, heights + m))};
  });
}

onestep_status onestep_density_preset(const char* name, double lower,
                                      double upper, size_t m,
                                      onestep_density** out) {
  if (auto st = require(name && out, "null pointer")) return st;
  return guarded([&] {
    GridGeometry geom{lower, upper, m};
    *out = new onestep_density{preset_density(name, geom)};
  });
}

void onestep_density_free(onestep_density* d) { delete d; }

onestep_status onestep_density_size(const onestep_density* d, size_t* out) {
  if (auto st = require(d && out, "null pointer")) return st;
  *out = d->value.size();
  return ONESTEP_OK;
}

onestep_status onestep_density_values(const onestep_density* d, double* out,
                                      size_t len) {
  if (auto st = require(d && out, "null pointer")) return st;
  if (auto st = require(len >= d->value.size(), "buffer too small")) return st;
  std::memcpy(out, d->value.values().data(), d->value.size() * sizeof(double));
  return ONESTEP_OK;
}

onestep_status onestep_density_value_at(const onestep_density* d, double z,
                                        double* out) {
  if (auto st = require(d && out, "null pointer")) return st;
  return guarded([&] { *out = d->value.value_at(z); });
}

onestep_status onestep_density_mix(const onestep_density* p,
                                   const onestep_density* ptilde, double eps,
                                   onestep_density** out) {
  if (auto st = require(p && ptilde && out, "null pointer")) return st;
  return guarded([&] {
    *out = new onestep_density{mix(p->value, ptilde->value, eps)};
  });
}

onestep_status onestep_density_l2_distance(const onestep_density* a,
                                           const onestep_density* b,
                                           double* out) {
  if (auto st = require(a && b && out, "null pointer")) return st;
  return guarded([&] { *out = l2_distance(a->value, b->value); });
}

onestep_status onestep_discrete_create(const double* atoms,
                                       const double* masses, size_t k,
                                       onestep_discrete** out) {
  if (auto st = require(atoms && masses && out, "null pointer")) return st;
  return guarded([&] {
    *out = new onestep_discrete{DiscreteDist(
        std::vector<double>(atoms, atoms + k),
        std::vector<double>(masses, masses + k))};
  });
}

void onestep_discrete_free(onestep_discrete* d) { delete d; }

onestep_status onestep_discrete_mix(const onestep_discrete* p,
                                    const onestep_discrete* ptilde, double eps,
                                    onestep_discrete** out) {
  if (auto st = require(p && ptilde && out, "null pointer")) return st;
  return guarded([&] {
    *out = new onestep_discrete{mix(p->value, ptilde->value, eps)};
  });
}

onestep_status onestep_discrete_l2_distance(const onestep_discrete* a,
                                            const onestep_discrete* b,
                                            double* out) {
  if (auto st = require(a && b && out, "null pointer")) return st;
  return guarded([&] { *out = l2_distance(a->value, b->value); });
}

onestep_status onestep_evaluate(const char* functional,
                                const onestep_density* g, double* out) {
  if (auto st = require(functional && g && out, "null pointer")) return st;
  return guarded([&] {
    *out = functional_by_name(functional).evaluate(g->value);
  });
}

onestep_status onestep_evaluate_discrete(const char* functional,
                                         const onestep_discrete* g,
                                         double* out) {
  if (auto st = require(functional && g && out, "null pointer")) return st;
  return guarded([&] {
    *out = functional_by_name(functional).evaluate(g->value);
  });
}

onestep_status onestep_influence(const char* functional, double z,
                                 const onestep_density* g, double* out) {
  if (auto st = require(functional && g && out, "null pointer")) return st;
  return guarded([&] {
    *out = functional_by_name(functional).influence(z, g->value);
  });
}

onestep_status onestep_influence_discrete(const char* functional, double atom,
                                          const onestep_discrete* g,
                                          double* out) {
  if (auto st = require(functional && g && out, "null pointer")) return st;
  return guarded([&] {
    *out = functional_by_name(functional).influence(atom, g->value);
  });
}

onestep_status onestep_pathwise_derivative(const char* functional,
                                           const onestep_density* target,
                                           const onestep_density* initial,
                                           double* out) {
  if (auto st = require(functional && target && initial && out, "null pointer"))
    return st;
  return guarded([&] {
    const Path path = make_path(target->value, initial->value);
    *out = pathwise_derivative_at_one(path, functional_by_name(functional));
  });
}

onestep_status onestep_one_step_intercept(const char* functional,
                                          const onestep_density* target,
                                          const onestep_density* initial,
                                          double* out) {
  if (auto st = require(functional && target && initial && out, "null pointer"))
    return st;
  return guarded([&] {
    const Path path = make_path(target->value, initial->value);
    *out = one_step_intercept(path, functional_by_name(functional));
  });
}

onestep_status onestep_exact_r2(const char* functional,
                                const onestep_density* target,
                                const onestep_density* initial, double* out) {
  if (auto st = require(functional && target && initial && out, "null pointer"))
    return st;
  return guarded([&] {
    const Path path = make_path(target->value, initial->value);
    *out = exact_r2(path, functional_by_name(functional));
  });
}

onestep_status onestep_sample(const onestep_density* p, size_t n, uint64_t seed,
                              onestep_samples** out) {
  if (auto st = require(p && out, "null pointer")) return st;
  return guarded([&] {
    *out = new onestep_samples{sample(p->value, n, seed)};
  });
}

onestep_status onestep_samples_create(const double* points, size_t n,
                                      onestep_samples** out) {
  if (auto st = require(points && out, "null pointer")) return st;
  return guarded([&] {
    *out = new onestep_samples{
        SampleSet{std::vector<double>(points, points + n), 0}};
  });
}

void onestep_samples_free(onestep_samples* s) { delete s; }

onestep_status onestep_samples_size(const onestep_samples* s, size_t* out) {
  if (auto st = require(s && out, "null pointer")) return st;
  *out = s->value.points.size();
  return ONESTEP_OK;
}

onestep_status onestep_samples_values(const onestep_samples* s, double* out,
                                      size_t len) {
  if (auto st = require(s && out, "null pointer")) return st;
  if (auto st = require(len >= s->value.points.size(), "buffer too small"))
    return st;
  std::memcpy(out, s->value.points.data(),
              s->value.points.size() * sizeof(double));
  return ONESTEP_OK;
}

onestep_status onestep_kde_fit(const onestep_samples* samples, double lower,
                               double upper, size_t m,
                               const onestep_kde_config* config,
                               onestep_density** out) {
  if (auto st = require(samples && out, "null pointer")) return st;
  return guarded([&] {
    GridGeometry geom{lower, upper, m};
    *out = new onestep_density{kde_fit(samples->value, geom, to_config(config))};
  });
}

onestep_status onestep_one_step(const char* functional,
                                const onestep_density* ptilde,
                                const onestep_samples* eval_samples,
                                onestep_report* out) {
  if (auto st = require(functional && ptilde && eval_samples && out,
                        "null pointer"))
    return st;
  return guarded([&] {
    fill_report(one_step(functional_by_name(functional), ptilde->value,
                         eval_samples->value),
                out);
  });
}

onestep_status onestep_split_one_step(const char* functional,
                                      const onestep_samples* samples,
                                      double lower, double upper, size_t m,
                                      const onestep_kde_config* config,
                                      uint64_t split_seed,
                                      onestep_report* out) {
  if (auto st = require(functional && samples && out, "null pointer")) return st;
  return guarded([&] {
    GridGeometry geom{lower, upper, m};
    fill_report(split_one_step(functional_by_name(functional), samples->value,
                               geom, to_config(config), split_seed),
                out);
  });
}

onestep_status onestep_efficiency_bound(const char* functional,
                                        const onestep_density* p, uint64_t n,
                                        double* out) {
  if (auto st = require(functional && p && out, "null pointer")) return st;
  return guarded([&] {
    *out = efficiency_bound(functional_by_name(functional), p->value,
                            static_cast<std::size_t>(n));
  });
}

onestep_status onestep_loglog_slope(const double* xs, const double* ys,
                                    size_t n, double* out) {
  if (auto st = require(xs && ys && out, "null pointer")) return st;
  return guarded([&] {
    *out = loglog_slope(std::span<const double>(xs, n),
                        std::span<const double>(ys, n));
  });
}

onestep_status onestep_run_command(const char* command, const char* config_path,
                                   const char* out_dir, const char* functional,
                                   long long seed, int has_seed,
                                   char** summary_out) {
  if (auto st = require(command, "null command")) return st;
  return guarded([&] {
    RunConfig config = config_path ? parse_config_file(config_path) : RunConfig{};
    if (out_dir && *out_dir) config.out_dir = out_dir;
    if (functional && *functional) config.functional = functional;
    if (has_seed) {
      if (seed < 0) throw ConfigError("seed must be nonnegative");
      config.seed = static_cast<std::uint64_t>(seed);
      config.has_seed = true;
    }
    config.out_dir = resolve_out_dir(config, "");
    const CmdResult result = run_command(command, config);
    if (summary_out) {
      std::string text = result.summary;
      for (const auto& f : result.files) text += "wrote " + f + "\n";
      char* owned = static_cast<char*>(std::malloc(text.size() + 1));
      if (!owned) throw std::bad_alloc();
      std::memcpy(owned, text.c_str(), text.size() + 1);
      *summary_out = owned;
    }
  });
}

} // extern "C"
