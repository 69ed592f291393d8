#include "vfbns/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vfbns {

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "run") return ExperimentKind::run;
  if (name == "sweep_eps" || name == "sweep-eps") return ExperimentKind::sweep_eps;
  if (name == "sweep_mesh" || name == "sweep-mesh") return ExperimentKind::sweep_mesh;
  throw std::invalid_argument("experiment: unknown experiment '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::run: return "run";
    case ExperimentKind::sweep_eps: return "sweep_eps";
    case ExperimentKind::sweep_mesh: return "sweep_mesh";
  }
  return "run";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last || !std::isfinite(v)) {
    throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last) {
    throw std::invalid_argument(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    out += f(xs[k]);
  }
  return out;
}

struct Key {
  const char* section;
  const char* name;
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"model", "gamma", [](Config& c, const std::string& s) { c.params.gamma = to_double("gamma", s); },
       [](const Config& c) { return fmt(c.params.gamma); }},
      {"model", "epsilon", [](Config& c, const std::string& s) { c.params.epsilon = to_double("epsilon", s); },
       [](const Config& c) { return fmt(c.params.epsilon); }},
      {"model", "g", [](Config& c, const std::string& s) { c.params.g = to_double("g", s); },
       [](const Config& c) { return fmt(c.params.g); }},
      {"model", "alpha", [](Config& c, const std::string& s) { c.params.alpha = to_double("alpha", s); },
       [](const Config& c) { return fmt(c.params.alpha); }},
      {"model", "mass", [](Config& c, const std::string& s) { c.mass = to_double("mass", s); },
       [](const Config& c) { return fmt(c.mass); }},
      {"grid", "N", [](Config& c, const std::string& s) { c.params.N = to_int("N", s); },
       [](const Config& c) { return std::to_string(c.params.N); }},
      {"time", "t_end", [](Config& c, const std::string& s) { c.params.t_end = to_double("t_end", s); },
       [](const Config& c) { return fmt(c.params.t_end); }},
      {"time", "dt_safety", [](Config& c, const std::string& s) { c.params.dt_safety = to_double("dt_safety", s); },
       [](const Config& c) { return fmt(c.params.dt_safety); }},
      {"time", "integrator", [](Config& c, const std::string& s) { c.integrator = parse_integrator_mode(s); },
       [](const Config& c) { return to_string(c.integrator); }},
      {"time", "dt_max", [](Config& c, const std::string& s) { c.dt_max = to_double("dt_max", s); },
       [](const Config& c) { return fmt(c.dt_max); }},
      {"time", "dt_min", [](Config& c, const std::string& s) { c.dt_min = to_double("dt_min", s); },
       [](const Config& c) { return fmt(c.dt_min); }},
      {"time", "fixed_dt", [](Config& c, const std::string& s) { c.fixed_dt = to_double("fixed_dt", s); },
       [](const Config& c) { return fmt(c.fixed_dt); }},
      {"time", "samples", [](Config& c, const std::string& s) { c.samples = to_int("samples", s); },
       [](const Config& c) { return std::to_string(c.samples); }},
      {"data", "kind", [](Config& c, const std::string& s) { c.kind = parse_family_kind(s); },
       [](const Config& c) { return to_string(c.kind); }},
      {"data", "delta", [](Config& c, const std::string& s) { c.delta = to_double("delta", s); },
       [](const Config& c) { return fmt(c.delta); }},
      {"data", "shape", [](Config& c, const std::string& s) { c.shape = parse_shape_kind(s); },
       [](const Config& c) { return to_string(c.shape); }},
      {"data", "epsilon_power", [](Config& c, const std::string& s) { c.epsilon_power = to_double("epsilon_power", s); },
       [](const Config& c) { return fmt(c.epsilon_power); }},
      {"data", "density", [](Config& c, const std::string& s) { c.density = s; },
       [](const Config& c) { return c.density; }},
      {"experiment", "experiment", [](Config& c, const std::string& s) { c.experiment = parse_experiment_kind(s); },
       [](const Config& c) { return to_string(c.experiment); }},
      {"experiment", "eps_list", [](Config& c, const std::string& s) { c.eps_list = parse_double_list("eps_list", s); },
       [](const Config& c) { return join(c.eps_list, fmt); }},
      {"experiment", "mesh_list", [](Config& c, const std::string& s) { c.mesh_list = parse_int_list("mesh_list", s); },
       [](const Config& c) { return join(c.mesh_list, [](int n) { return std::to_string(n); }); }},
      {"experiment", "fit_t_a", [](Config& c, const std::string& s) { c.fit_t_a = to_double("fit_t_a", s); },
       [](const Config& c) { return fmt(c.fit_t_a); }},
      {"experiment", "compat_tol", [](Config& c, const std::string& s) { c.compat_tol = to_double("compat_tol", s); },
       [](const Config& c) { return fmt(c.compat_tol); }},
      {"experiment", "energy_tol", [](Config& c, const std::string& s) { c.energy_tol = to_double("energy_tol", s); },
       [](const Config& c) { return fmt(c.energy_tol); }},
      {"experiment", "energy_tol_imex", [](Config& c, const std::string& s) { c.energy_tol_imex = to_double("energy_tol_imex", s); },
       [](const Config& c) { return fmt(c.energy_tol_imex); }},
      {"experiment", "rate_min", [](Config& c, const std::string& s) { c.rate_min = to_double("rate_min", s); },
       [](const Config& c) { return fmt(c.rate_min); }},
      {"experiment", "rate_max", [](Config& c, const std::string& s) { c.rate_max = to_double("rate_max", s); },
       [](const Config& c) { return fmt(c.rate_max); }},
      {"output", "output", [](Config& c, const std::string& s) { c.output = s; },
       [](const Config& c) { return c.output; }},
  };
  return k;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument(key + ": empty list entry");
    out.push_back(to_double(key, item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument(key + ": empty list entry");
    out.push_back(to_int(key, item));
  }
  return out;
}

StepPolicy Config::policy() const {
  StepPolicy p;
  p.mode = integrator;
  p.dt_safety = params.dt_safety;
  p.dt_max = dt_max;
  p.dt_min = dt_min;
  p.fixed_dt = fixed_dt;
  return p;
}

DataFamily Config::family() const {
  DataFamily f;
  f.kind = kind;
  f.delta = delta;
  f.shape = shape;
  f.epsilon_power = epsilon_power;
  if (kind == FamilyKind::from_density) {
    const SteadyProfile profile(params.gamma, 1.0, 1.0);
    if (density == "steady") {
      f.rho0 = [profile](double y) { return profile.density(y); };
    } else if (density == "quadratic_map") {
      // rho0(eta(x)) = rho_bar(x)/eta'(x) for eta(x) = (3x + x^2)/4
      f.rho0 = [profile](double y) {
        const double x = 0.5 * (std::sqrt(9.0 + 16.0 * y) - 3.0);
        return profile.density(x) / ((3.0 + 2.0 * x) / 4.0);
      };
    } else {
      throw std::invalid_argument("density: unknown density '" + density + "'");
    }
    f.l0 = 1.0;
  }
  return f;
}

void Config::validate() const {
  params.validate();
  policy().validate();
  if (samples < 1) throw std::invalid_argument("samples: need at least 1");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta: must be nonnegative");
  if (!(mass >= 0.0)) throw std::invalid_argument("mass: must be nonnegative");
  if (density != "steady" && density != "quadratic_map") {
    throw std::invalid_argument("density: unknown density '" + density + "'");
  }
  if (!(compat_tol > 0.0)) throw std::invalid_argument("compat_tol: must be positive");
  if (!(energy_tol > 0.0)) throw std::invalid_argument("energy_tol: must be positive");
  if (!(energy_tol_imex > 0.0)) throw std::invalid_argument("energy_tol_imex: must be positive");
  if (!(rate_min < rate_max)) throw std::invalid_argument("rate_min: must be below rate_max");
  if (!(fit_t_a >= 0.0)) throw std::invalid_argument("fit_t_a: must be nonnegative");
  if (output.empty()) throw std::invalid_argument("output: must not be empty");
  if (experiment == ExperimentKind::sweep_eps) {
    if (eps_list.empty()) throw std::invalid_argument("eps_list: missing required key");
    if (eps_list.size() < 3) throw std::invalid_argument("eps_list: need at least 3 values");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
      if (!(eps_list[k] > 0.0 && eps_list[k] <= 1.0)) {
        throw std::invalid_argument("eps_list: epsilon must lie in (0,1]");
      }
      if (k > 0 && !(eps_list[k] < eps_list[k - 1])) {
        throw std::invalid_argument("eps_list: values must be decreasing");
      }
    }
  }
  if (experiment == ExperimentKind::sweep_mesh) {
    if (mesh_list.empty()) throw std::invalid_argument("mesh_list: missing required key");
    if (mesh_list.size() < 3) throw std::invalid_argument("mesh_list: need at least 3 values");
    for (std::size_t k = 0; k < mesh_list.size(); ++k) {
      if (mesh_list[k] < 4) throw std::invalid_argument("mesh_list: N must be at least 4");
      if (k > 0 && mesh_list[k] != 2 * mesh_list[k - 1]) {
        throw std::invalid_argument("mesh_list: values must double");
      }
    }
  }
}

Config parse_config_unchecked(const std::string& text) {
  Config c;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& k : keys()) known = known || section == k.section;
      if (!known) throw std::invalid_argument(section + ": unknown section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Key* found = nullptr;
    for (const auto& k : keys()) {
      if (key == k.name) found = &k;
    }
    if (!found) throw std::invalid_argument(key + ": unknown key");
    if (!section.empty() && section != found->section) {
      throw std::invalid_argument(key + ": key does not belong to section [" + section + "]");
    }
    if (value.empty()) throw std::invalid_argument(key + ": missing value");
    found->set(c, value);
  }
  return c;
}

Config parse_config(const std::string& text) {
  Config c = parse_config_unchecked(text);
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const Config& c) {
  std::string out;
  std::string section;
  for (const auto& k : keys()) {
    if (section != k.section) {
      section = k.section;
      if (!out.empty()) out += "\n";
      out += "[" + section + "]\n";
    }
    const std::string v = k.get(c);
    if (v.empty()) continue;  // empty lists
    out += std::string(k.name) + " = " + v + "\n";
  }
  return out;
}

}  // namespace vfbns
