#include "fipm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fipm {

SolverSettings ExperimentConfig::solver_settings() const {
  SolverSettings s;
  s.closure = closure;
  s.filter = filter;
  s.dual.tolerance = tau;
  s.dual.regularization = eta;
  s.dual.max_iterations = max_newton_iterations;
  s.policy = policy;
  return s;
}

ShockTubeSetup ExperimentConfig::shock_tube() const {
  ShockTubeSetup setup;
  setup.grid = grid;
  setup.ic = ic;
  setup.gamma = gamma;
  setup.degree = degree;
  setup.quad_points = resolved_quad_points();
  setup.solver = solver_settings();
  setup.output_times = output_times;
  return setup;
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

// Thrown by value parsers; rewrapped with key and location.
struct BadValue {
  std::string reason;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw BadValue{"expected a number, got '" + std::string(s) + "'"};
  }
  return v;
}

template <class Int>
Int to_integer(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw BadValue{"expected an integer, got '" + std::string(s) + "'"};
  }
  return v;
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw BadValue{"expected true/false, got '" + std::string(s) + "'"};
}

std::vector<double> to_list(std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(to_double(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string list_text(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_number(values[i]);
  return out;
}

struct Key {
  const char* name;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define FIPM_DOUBLE_KEY(key, member)                                                  \
  Key {                                                                               \
    key, [](ExperimentConfig& c, std::string_view v) { c.member = to_double(v); },    \
        [](const ExperimentConfig& c) { return format_number(c.member); }             \
  }
#define FIPM_INT_KEY(key, member)                                                          \
  Key {                                                                                    \
    key, [](ExperimentConfig& c, std::string_view v) { c.member = to_integer<int>(v); },   \
        [](const ExperimentConfig& c) { return std::to_string(c.member); }                 \
  }
#define FIPM_LIST_KEY(key, member)                                                 \
  Key {                                                                            \
    key, [](ExperimentConfig& c, std::string_view v) { c.member = to_list(v); },   \
        [](const ExperimentConfig& c) { return list_text(c.member); }              \
  }

const std::vector<Key>& registry() {
  static const std::vector<Key> keys = {
      {"name", [](ExperimentConfig& c, std::string_view v) { c.name = std::string(trim(v)); },
       [](const ExperimentConfig& c) { return c.name; }},
      FIPM_DOUBLE_KEY("domain_min", grid.domain_min),
      FIPM_DOUBLE_KEY("domain_max", grid.domain_max),
      FIPM_INT_KEY("cells", grid.cells),
      FIPM_DOUBLE_KEY("t_end", grid.t_end),
      FIPM_DOUBLE_KEY("cfl", grid.cfl),
      FIPM_LIST_KEY("output_times", output_times),
      FIPM_DOUBLE_KEY("x0", ic.x0),
      FIPM_DOUBLE_KEY("sigma", ic.sigma),
      FIPM_DOUBLE_KEY("rho_left", ic.left.density),
      FIPM_DOUBLE_KEY("u_left", ic.left.velocity),
      FIPM_DOUBLE_KEY("p_left", ic.left.pressure),
      FIPM_DOUBLE_KEY("rho_right", ic.right.density),
      FIPM_DOUBLE_KEY("u_right", ic.right.velocity),
      FIPM_DOUBLE_KEY("p_right", ic.right.pressure),
      FIPM_DOUBLE_KEY("gamma", gamma),
      FIPM_INT_KEY("degree", degree),
      FIPM_INT_KEY("quad_points", quad_points),
      {"closure", [](ExperimentConfig& c, std::string_view v) { c.closure = parse_closure_kind(trim(v)); },
       [](const ExperimentConfig& c) { return std::string(to_string(c.closure)); }},
      {"filter", [](ExperimentConfig& c, std::string_view v) { c.filter.kind = parse_filter_kind(trim(v)); },
       [](const ExperimentConfig& c) { return std::string(to_string(c.filter.kind)); }},
      FIPM_DOUBLE_KEY("filter_strength", filter.strength),
      FIPM_DOUBLE_KEY("filter_order", filter.order),
      {"filter_dt_coupled", [](ExperimentConfig& c, std::string_view v) { c.filter.dt_coupled = to_bool(v); },
       [](const ExperimentConfig& c) { return std::string(c.filter.dt_coupled ? "true" : "false"); }},
      FIPM_DOUBLE_KEY("eta", eta),
      FIPM_DOUBLE_KEY("tau", tau),
      FIPM_INT_KEY("max_newton_iterations", max_newton_iterations),
      {"policy",
       [](ExperimentConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "serial") {
           c.policy = ExecutionPolicy::Serial;
         } else if (v == "parallel") {
           c.policy = ExecutionPolicy::Parallel;
         } else {
           throw BadValue{"expected serial or parallel, got '" + std::string(v) + "'"};
         }
       },
       [](const ExperimentConfig& c) {
         return std::string(c.policy == ExecutionPolicy::Serial ? "serial" : "parallel");
       }},
      FIPM_INT_KEY("threads", threads),
      {"output_dir", [](ExperimentConfig& c, std::string_view v) { c.output_dir = std::string(trim(v)); },
       [](const ExperimentConfig& c) { return c.output_dir; }},
      {"seed", [](ExperimentConfig& c, std::string_view v) { c.seed = to_integer<std::uint64_t>(v); },
       [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      {"delta_region",
       [](ExperimentConfig& c, std::string_view v) {
         const auto values = to_list(v);
         if (values.size() != 2) throw BadValue{"expected 'lo,hi'"};
         c.delta_region = {values[0], values[1]};
       },
       [](const ExperimentConfig& c) {
         return format_number(c.delta_region.lo) + "," + format_number(c.delta_region.hi);
       }},
      FIPM_INT_KEY("scan_resolution", scan_resolution),
      FIPM_DOUBLE_KEY("scan_exp_order", scan_exp_order),
      FIPM_LIST_KEY("scan_exp_exponents", scan_exp_exponents),
      FIPM_LIST_KEY("scan_fp_strengths", scan_fp_strengths),
  };
  return keys;
}

#undef FIPM_DOUBLE_KEY
#undef FIPM_INT_KEY
#undef FIPM_LIST_KEY

const Key* find_key(std::string_view name) {
  for (const Key& k : registry()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

class Locations {
 public:
  void add(const std::string& key, std::string where) { where_[key] = std::move(where); }
  bool has(const std::string& key) const { return where_.count(key) > 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& reason) const {
    const auto it = where_.find(key);
    const std::string where = it == where_.end() ? "default" : it->second;
    throw ConfigError("config: " + where + ": key '" + key + "': " + reason);
  }

 private:
  std::map<std::string, std::string> where_;
};

void assign(ExperimentConfig& config, Locations& locations, std::string_view entry, const std::string& where,
            bool from_file) {
  const auto eq = entry.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("config: " + where + ": expected 'key = value', got '" + std::string(trim(entry)) + "'");
  }
  const std::string key(trim(entry.substr(0, eq)));
  const Key* def = find_key(key);
  if (!def) throw ConfigError("config: " + where + ": unknown key '" + key + "'");
  if (from_file && locations.has(key)) throw ConfigError("config: " + where + ": duplicate key '" + key + "'");
  locations.add(key, where);
  try {
    def->set(config, entry.substr(eq + 1));
  } catch (const BadValue& bad) {
    locations.fail(key, bad.reason);
  } catch (const ConfigError& e) {
    locations.fail(key, e.what());
  }
}

void validate(const ExperimentConfig& c, const Locations& at) {
  for (const char* key : {"closure", "cells", "t_end", "degree"}) {
    if (!at.has(key)) throw ConfigError(std::string("config: missing required key '") + key + "'");
  }
  const auto check = [&](bool ok, const char* key, const std::string& reason) {
    if (!ok) at.fail(key, reason);
  };
  check(c.grid.domain_max > c.grid.domain_min, "domain_max", "must exceed domain_min");
  check(c.grid.cells >= 3, "cells", "must be >= 3");
  check(c.grid.t_end >= 0.0, "t_end", "must be >= 0");
  check(c.grid.cfl > 0.0 && c.grid.cfl <= 1.0, "cfl", "must lie in (0, 1]");
  for (double t : c.output_times) check(t > 0.0 && t <= c.grid.t_end, "output_times", "must lie in (0, t_end]");
  check(c.ic.sigma >= 0.0, "sigma", "must be >= 0");
  check(c.grid.domain_min < c.ic.x0 - c.ic.sigma && c.ic.x0 + c.ic.sigma < c.grid.domain_max, "x0",
        "interface band x0 +- sigma must lie inside the domain");
  check(c.ic.left.density > 0.0, "rho_left", "must be > 0");
  check(c.ic.left.pressure > 0.0, "p_left", "must be > 0");
  check(c.ic.right.density > 0.0, "rho_right", "must be > 0");
  check(c.ic.right.pressure > 0.0, "p_right", "must be > 0");
  check(c.gamma > 1.0, "gamma", "must be > 1");
  check(c.degree >= 0 && c.degree <= 40, "degree", "must lie in [0, 40]");
  check(c.quad_points == 0 || c.quad_points >= c.degree + 1, "quad_points", "must be 0 (auto) or >= degree + 1");
  check(c.filter.strength >= 0.0, "filter_strength", "must be >= 0");
  check(c.filter.order >= 1.0, "filter_order", "must be >= 1");
  check(c.eta >= 0.0, "eta", "must be >= 0");
  check(c.tau > 0.0, "tau", "must be > 0");
  check(c.max_newton_iterations >= 1, "max_newton_iterations", "must be >= 1");
  check(c.threads >= 0, "threads", "must be >= 0");
  check(c.delta_region.lo < c.delta_region.hi && c.delta_region.lo >= c.grid.domain_min &&
            c.delta_region.hi <= c.grid.domain_max,
        "delta_region", "must be an interval inside the domain");
  check(c.scan_resolution >= 2, "scan_resolution", "must be >= 2");
  check(c.scan_exp_order >= 1.0, "scan_exp_order", "must be >= 1");
  for (double v : c.scan_exp_exponents) check(v >= 0.0, "scan_exp_exponents", "entries must be >= 0");
  for (double v : c.scan_fp_strengths) check(v >= 0.0, "scan_fp_strengths", "entries must be >= 0");

  const bool filtered = c.filter.kind != FilterKind::None;
  switch (c.closure) {
    case ClosureKind::SG:
      check(!filtered, "filter", "closure SG takes no filter (use fSG)");
      break;
    case ClosureKind::FilteredSG:
      break;
    case ClosureKind::IPM:
      check(!filtered, "filter", "closure IPM takes no filter");
      check(c.eta == 0.0, "eta", "closure IPM requires eta = 0");
      break;
    case ClosureKind::RealizableFilteredIPM:
      check(c.filter.kind == FilterKind::FokkerPlanck, "filter", "closure fIPM-realizable requires fokker-planck");
      check(c.eta == 0.0, "eta", "closure fIPM-realizable requires eta = 0");
      break;
    case ClosureKind::RegularizedFilteredIPM:
      check(c.eta > 0.0, "eta", "closure fIPM-regularized requires eta > 0");
      break;
  }
}

}  // namespace

namespace {

ExperimentConfig parse_named(std::string_view text, const std::vector<std::string>& overrides, std::string name) {
  ExperimentConfig config;
  config.name = std::move(name);
  Locations locations;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    assign(config, locations, line, "line " + std::to_string(line_no), true);
  }
  for (const auto& entry : overrides) assign(config, locations, entry, "--set " + entry, false);
  validate(config, locations);
  return config;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  return parse_named(text, overrides, ExperimentConfig{}.name);
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_named(text.str(), overrides, path.stem().string());
}

std::string to_text(const ExperimentConfig& config) {
  std::string out;
  for (const Key& k : registry()) out += std::string(k.name) + " = " + k.get(config) + "\n";
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Key& k : registry()) out.emplace_back(k.name);
  return out;
}

}  // namespace fipm
