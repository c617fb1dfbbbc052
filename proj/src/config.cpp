#include "onestep/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace onestep {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& name, std::size_t line,
                       const std::string& what) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& name, std::size_t line,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) fail(name, line, "trailing characters in number");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(name, line, "expected a number, got '" + value + "'");
  }
}

std::size_t parse_size(const std::string& name, std::size_t line,
                       const std::string& value) {
  const double v = parse_double(name, line, value);
  if (!(v >= 0.0) || v != std::floor(v))
    fail(name, line, "expected a nonnegative integer, got '" + value + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_double_list(const std::string& name, std::size_t line,
                                      const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value, ','))
    out.push_back(parse_double(name, line, item));
  if (out.empty()) fail(name, line, "expected a comma-separated list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& name,
                                         std::size_t line,
                                         const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value, ','))
    out.push_back(parse_size(name, line, item));
  if (out.empty()) fail(name, line, "expected a comma-separated list");
  return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  RunConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "empty key");
    if (!section.empty()) key = section + "." + key;

    if (key == "functional") {
      cfg.functional = value;
    } else if (key == "target") {
      cfg.target = value;
    } else if (key == "initials") {
      cfg.initials = split_list(value, ';');
      if (cfg.initials.empty()) fail(name, lineno, "empty initials list");
    } else if (key == "m") {
      cfg.geom.cells = parse_size(name, lineno, value);
    } else if (key == "lower") {
      cfg.geom.lower = parse_double(name, lineno, value);
    } else if (key == "upper") {
      cfg.geom.upper = parse_double(name, lineno, value);
    } else if (key == "eps_points") {
      cfg.eps_points = parse_size(name, lineno, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_size(name, lineno, value));
      cfg.has_seed = true;
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "resolution") {
      cfg.resolution = parse_size(name, lineno, value);
    } else if (key == "atoms") {
      cfg.atoms = parse_double_list(name, lineno, value);
    } else if (key == "target_pmf") {
      cfg.target_pmf = parse_double_list(name, lineno, value);
    } else if (key == "initial_pmfs") {
      cfg.initial_pmfs.clear();
      for (const auto& part : split_list(value, ';'))
        cfg.initial_pmfs.push_back(parse_double_list(name, lineno, part));
      if (cfg.initial_pmfs.empty()) fail(name, lineno, "empty pmf list");
    } else if (key == "kde.kernel") {
      if (value != "gaussian")
        fail(name, lineno, "only the gaussian kernel is supported");
    } else if (key == "kde.boundary") {
      if (value != "truncate")
        fail(name, lineno, "only truncate-and-renormalize is supported");
    } else if (key == "kde.rule") {
      if (value == "fixed") {
        cfg.kde.rule = BandwidthRule::kFixed;
      } else if (value == "reference") {
        cfg.kde = KdeConfig::reference();
      } else if (value == "undersmoothed") {
        cfg.kde = KdeConfig::undersmoothed();
      } else {
        fail(name, lineno, "rule must be fixed, reference or undersmoothed");
      }
    } else if (key == "kde.scale") {
      cfg.kde.scale = parse_double(name, lineno, value);
    } else if (key == "kde.fixed_h") {
      cfg.kde.fixed_bandwidth = parse_double(name, lineno, value);
    } else if (key == "simulate.n") {
      cfg.sim_n = parse_size_list(name, lineno, value);
    } else if (key == "simulate.reps") {
      cfg.sim_reps = parse_size(name, lineno, value);
    } else if (key == "rates.mode") {
      if (value != "direction" && value != "kde")
        fail(name, lineno, "mode must be direction or kde");
      cfg.rates_mode = value;
    } else if (key == "rates.direction") {
      cfg.rates_direction = value;
    } else if (key == "rates.t") {
      cfg.t_grid = parse_double_list(name, lineno, value);
    } else if (key == "rates.n") {
      cfg.rates_n = parse_size_list(name, lineno, value);
    } else if (key == "rates.reps") {
      cfg.rates_reps = parse_size(name, lineno, value);
    } else {
      fail(name, lineno, "unknown key '" + key + "'");
    }
  }
  try {
    cfg.geom.validate();
  } catch (const DomainError& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string resolve_out_dir(const RunConfig& config,
                            const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("ONESTEP_OUT_DIR"); env && *env) return env;
  return "./out";
}

namespace {

double uniform_height(double) { return 1.0; }

} // namespace

GridDensity preset_density(const std::string& name, const GridGeometry& geom) {
  const double lo = geom.lower, hi = geom.upper;
  const double len = hi - lo;
  if (name == "uniform") return GridDensity::from_function(geom, uniform_height);
  std::vector<double> heights(geom.cells);
  if (name == "beta22") {
    for (std::size_t i = 0; i < geom.cells; ++i) {
      const double u = (geom.midpoint(i) - lo) / len;
      heights[i] = 6.0 * u * (1.0 - u);
    }
  } else if (name == "linear") {
    for (std::size_t i = 0; i < geom.cells; ++i) {
      const double u = (geom.midpoint(i) - lo) / len;
      heights[i] = 2.0 * u;
    }
  } else if (name == "twobump") {
    const double s = 0.1 * len;
    const double c1 = lo + 0.3 * len, c2 = lo + 0.7 * len;
    for (std::size_t i = 0; i < geom.cells; ++i) {
      const double z = geom.midpoint(i);
      const double a = (z - c1) / s, b = (z - c2) / s;
      heights[i] = std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b);
    }
  } else {
    throw ConfigError("unknown density preset '" + name + "'");
  }
  return GridDensity(geom, std::move(heights));
}

GridDensity resolve_density(const std::string& spec, const GridGeometry& geom) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw IoError(spec + ": cannot open density file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      GridDensity d = spec.size() > 5 && spec.substr(spec.size() - 5) == ".json"
                          ? GridDensity::from_json(buf.str())
                          : GridDensity::from_csv(buf.str());
      // Endpoints reconstructed from a CSV z column can be off by an ulp.
      const auto& got = d.geometry();
      const double tol = 1e-9 * (geom.upper - geom.lower);
      if (got.cells != geom.cells || std::abs(got.lower - geom.lower) > tol ||
          std::abs(got.upper - geom.upper) > tol)
        throw ConfigError(spec + ": density grid does not match the configured grid");
      return GridDensity(geom, std::vector<double>(d.values().begin(),
                                                   d.values().end()));
    } catch (const IoError& e) {
      throw ConfigError(spec + ": " + e.what());
    }
  }
  return preset_density(spec, geom);
}

GridDensity resolve_initial(const std::string& spec, const GridDensity& target) {
  if (spec.rfind("mix(", 0) == 0 && spec.back() == ')') {
    const std::string inner = spec.substr(4, spec.size() - 5);
    const auto comma = inner.rfind(',');
    if (comma == std::string::npos)
      throw ConfigError("initial '" + spec + "': expected mix(SPEC,EPS)");
    const std::string sub = trim(inner.substr(0, comma));
    double eps = 0.0;
    try {
      eps = std::stod(inner.substr(comma + 1));
    } catch (const std::exception&) {
      throw ConfigError("initial '" + spec + "': bad eps");
    }
    const GridDensity toward = resolve_density(sub, target.geometry());
    try {
      return mix(target, toward, eps);
    } catch (const DomainError& e) {
      throw ConfigError("initial '" + spec + "': " + e.what());
    }
  }
  return resolve_density(spec, target.geometry());
}

} // namespace onestep
