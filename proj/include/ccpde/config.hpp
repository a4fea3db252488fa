#pragma once

// Flat sectioned key=value configuration:
//   [grid] / [potential] / [nonlinearity] / [solver] / [run]
// with '#' comments. Schema violations report the offending key and line.

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccpde/grid.hpp"
#include "ccpde/nonlinearity.hpp"
#include "ccpde/operator.hpp"
#include "ccpde/solver.hpp"

namespace ccpde {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Config {
 public:
  static Config parse_string(const std::string& text, const std::string& origin = "<config>") {
    Config cfg;
    cfg.raw_ = text;
    cfg.origin_ = origin;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto hash_pos = line.find('#');
      if (hash_pos != std::string::npos) line.erase(hash_pos);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty())
          throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
        cfg.sections_[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
      auto& sec = cfg.sections_[section];
      if (sec.count(key))
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
      sec[key] = Entry{value, lineno};
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str(), path);
  }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  std::string get_string(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end())
      throw ConfigError(origin_ + ": missing section [" + section + "]");
    const auto k = s->second.find(key);
    if (k == s->second.end())
      throw ConfigError(origin_ + ": missing key '" + key + "' in section [" + section + "]");
    return k->second.value;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
  }

  double get_double(const std::string& section, const std::string& key) const {
    return to_double(section, key, get_string(section, key));
  }
  double get_double(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  long long get_int(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
      std::size_t used = 0;
      const long long r = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ":" + std::to_string(line_of(section, key)) +
                        ": key '" + key + "' is not an integer: '" + v + "'");
    }
  }
  long long get_int(const std::string& section, const std::string& key, long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
  }

  int line_of(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return 0;
    const auto k = s->second.find(key);
    return k == s->second.end() ? 0 : k->second.line;
  }

  /// Rejects keys outside the allowed schema, naming the key and line.
  void check_schema(const std::map<std::string, std::set<std::string>>& allowed) const {
    for (const auto& [section, entries] : sections_) {
      const auto a = allowed.find(section);
      if (a == allowed.end())
        throw ConfigError(origin_ + ": unknown section [" + section + "]");
      for (const auto& [key, entry] : entries)
        if (!a->second.count(key))
          throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                            "' in section [" + section + "]");
    }
  }

  std::uint64_t hash() const { return fnv1a_hash(raw_); }
  const std::string& origin() const { return origin_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  double to_double(const std::string& section, const std::string& key,
                   const std::string& v) const {
    try {
      std::size_t used = 0;
      const double r = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ":" + std::to_string(line_of(section, key)) + ": key '" + key +
                        "' is not a number: '" + v + "'");
    }
  }

  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string raw_;
  std::string origin_;
};

inline const std::map<std::string, std::set<std::string>>& config_schema() {
  static const std::map<std::string, std::set<std::string>> schema = {
      {"grid", {"dimension", "half_width", "nodes_per_axis"}},
      {"potential", {"kind", "v0", "c", "base", "s", "alpha", "file"}},
      {"nonlinearity", {"kind", "p", "alpha", "beta", "nu", "q", "lambda", "lambda_scale"}},
      {"solver",
       {"max_iter", "grad_tol", "lin_tol", "cert_tol", "probes", "seed", "eigen_tol"}},
      {"run",
       {"sweep_count", "workers", "eigen_k", "rho_min", "rho_max", "rho_count",
        "sphere_samples", "deflation_radius", "symmetric_box"}},
  };
  return schema;
}

inline GridSpec grid_from_config(const Config& cfg) {
  GridSpec spec;
  spec.dimension = static_cast<int>(cfg.get_int("grid", "dimension"));
  spec.half_width = cfg.get_double("grid", "half_width");
  spec.nodes_per_axis = static_cast<int>(cfg.get_int("grid", "nodes_per_axis"));
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(cfg.origin() + ": [grid] " + e.what());
  }
  return spec;
}

inline PotentialSpec potential_from_config(const Config& cfg, const GridSpec& grid) {
  const std::string kind = cfg.get_string("potential", "kind");
  PotentialSpec pot;
  if (kind == "constant") {
    pot = PotentialSpec::constant(cfg.get_double("potential", "c"));
  } else if (kind == "radial_power") {
    pot = PotentialSpec::radial_power(cfg.get_double("potential", "base", 1.0),
                                      cfg.get_double("potential", "s"));
  } else if (kind == "anisotropic") {
    pot = PotentialSpec::anisotropic(cfg.get_double("potential", "alpha"),
                                     cfg.get_double("potential", "v0", 1.0));
  } else if (kind == "tabulated") {
    const std::string file = cfg.get_string("potential", "file");
    std::ifstream f(file);
    if (!f) throw ConfigError(cfg.origin() + ": cannot open potential table: " + file);
    std::vector<double> vals;
    double x;
    while (f >> x) vals.push_back(x);
    std::size_t expected = 1;
    for (int d = 0; d < grid.dimension; ++d)
      expected *= static_cast<std::size_t>(grid.nodes_per_axis);
    if (vals.size() != expected)
      throw ConfigError(cfg.origin() + ": potential table has " + std::to_string(vals.size()) +
                        " values but the grid has " + std::to_string(expected) +
                        " nodes (inconsistent N?)");
    pot = PotentialSpec::tabulated(std::move(vals), cfg.get_double("potential", "v0"));
  } else {
    throw ConfigError(cfg.origin() + ":" + std::to_string(cfg.line_of("potential", "kind")) +
                      ": unknown potential kind '" + kind + "'");
  }
  if (cfg.has("potential", "v0")) pot.v0 = cfg.get_double("potential", "v0");
  try {
    pot.validate(grid.dimension);
  } catch (const std::exception& e) {
    throw ConfigError(cfg.origin() + ": [potential] " + e.what());
  }
  return pot;
}

inline NonlinearitySpec nonlinearity_from_config(const Config& cfg) {
  const std::string kind = cfg.get_string("nonlinearity", "kind", "power");
  try {
    if (kind == "power")
      return NonlinearitySpec::power(
          cfg.get_double("nonlinearity", "p"),
          cfg.get_double("nonlinearity", "nu", std::numeric_limits<double>::quiet_NaN()));
    if (kind == "odd_exp")
      return NonlinearitySpec::odd_exp(static_cast<int>(cfg.get_int("nonlinearity", "alpha")),
                                       cfg.get_double("nonlinearity", "beta", 0.0),
                                       cfg.get_double("nonlinearity", "nu"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(cfg.origin() + ": [nonlinearity] " + e.what());
  }
  throw ConfigError(cfg.origin() + ":" + std::to_string(cfg.line_of("nonlinearity", "kind")) +
                    ": unknown nonlinearity kind '" + kind + "'");
}

inline SolveOptions solver_from_config(const Config& cfg) {
  SolveOptions opts;
  opts.max_iter = static_cast<std::size_t>(cfg.get_int("solver", "max_iter", 50000));
  opts.grad_tol = cfg.get_double("solver", "grad_tol", 1e-11);
  opts.lin_tol = cfg.get_double("solver", "lin_tol", 1e-12);
  opts.cert_tol = cfg.get_double("solver", "cert_tol", 1e-6);
  opts.stationarity_probes = static_cast<int>(cfg.get_int("solver", "probes", 1000));
  opts.seed = static_cast<std::uint64_t>(cfg.get_int("solver", "seed", 20240915));
  return opts;
}

}  // namespace ccpde
