#include "momentous/config.hpp"

#include <cstdlib>
#include <fstream>

namespace momentous {

using nlohmann::json;

namespace {

enum class KeyType { number, integer, string, boolean, optional_number, number_list };

struct KeyInfo {
  const char* name;
  KeyType type;
};

const std::vector<KeyInfo>& schema() {
  static const std::vector<KeyInfo> keys = {
      {"system", KeyType::string},
      {"moment_policy", KeyType::string},
      {"classical_policy", KeyType::string},
      {"mass", KeyType::number},
      {"radius", KeyType::number},
      {"hbar", KeyType::number},
      {"alpha", KeyType::number},
      {"beta", KeyType::number},
      {"gamma", KeyType::number},
      {"lambda", KeyType::number},
      {"kappa", KeyType::number},
      {"kappa_target", KeyType::optional_number},
      {"l", KeyType::integer},
      {"m_theta", KeyType::integer},
      {"a", KeyType::optional_number},
      {"theta0", KeyType::number},
      {"phi0", KeyType::number},
      {"correlation", KeyType::string},
      {"correlation_value", KeyType::number},
      {"moments_source", KeyType::string},
      {"rel_tol", KeyType::number},
      {"abs_tol", KeyType::number},
      {"max_step", KeyType::number},
      {"t_end", KeyType::number},
      {"sample_dt", KeyType::number},
      {"uncertainty_margin", KeyType::number},
      {"sin_floor", KeyType::number},
      {"max_steps", KeyType::integer},
      {"max_wall_seconds", KeyType::number},
      {"sweep_parameter", KeyType::string},
      {"sweep_values", KeyType::number_list},
      {"sweep_min", KeyType::optional_number},
      {"sweep_max", KeyType::optional_number},
      {"sweep_step", KeyType::optional_number},
      {"sweep_paired", KeyType::boolean},
      {"termination_policy", KeyType::string},
      {"threads", KeyType::integer},
      {"output_dir", KeyType::string},
      {"output_prefix", KeyType::string},
      {"wrap_phi", KeyType::boolean},
  };
  return keys;
}

const char* type_name(KeyType t) {
  switch (t) {
    case KeyType::number: return "number";
    case KeyType::integer: return "integer";
    case KeyType::string: return "string";
    case KeyType::boolean: return "boolean";
    case KeyType::optional_number: return "number or null";
    case KeyType::number_list: return "array of numbers";
  }
  return "?";
}

bool type_ok(KeyType t, const json& v) {
  switch (t) {
    case KeyType::number: return v.is_number();
    case KeyType::integer: return v.is_number_integer();
    case KeyType::string: return v.is_string();
    case KeyType::boolean: return v.is_boolean();
    case KeyType::optional_number: return v.is_null() || v.is_number();
    case KeyType::number_list:
      if (!v.is_array()) return false;
      for (const auto& x : v)
        if (!x.is_number()) return false;
      return true;
  }
  return false;
}

std::optional<double> opt_number(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.values = {
      {"system", "sphere_free"},
      {"moment_policy", "evolve"},
      {"classical_policy", "zeroed"},
      {"mass", 1.0},
      {"radius", 1.0},
      {"hbar", 1.0},
      {"alpha", 0.0},
      {"beta", 0.0},
      {"gamma", 0.0},
      {"lambda", 10.0},
      {"kappa", 10.0},
      {"kappa_target", nullptr},
      {"l", 10},
      {"m_theta", 1},
      {"a", 1.0},
      {"theta0", kPi / 2.0},
      {"phi0", 0.0},
      {"correlation", "zero"},
      {"correlation_value", 0.0},
      {"moments_source", "tabulated"},
      {"rel_tol", 1e-9},
      {"abs_tol", 1e-12},
      {"max_step", 0.25},
      {"t_end", 10.0},
      {"sample_dt", 0.01},
      {"uncertainty_margin", 1e-10},
      {"sin_floor", 1e-3},
      {"max_steps", 5000000},
      {"max_wall_seconds", 60.0},
      {"sweep_parameter", ""},
      {"sweep_values", json::array()},
      {"sweep_min", nullptr},
      {"sweep_max", nullptr},
      {"sweep_step", nullptr},
      {"sweep_paired", true},
      {"termination_policy", "last_valid_state"},
      {"threads", 0},
      {"output_dir", ""},
      {"output_prefix", "run"},
      {"wrap_phi", false},
  };
  return c;
}

std::vector<std::pair<std::string, std::string>> config_schema() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : schema()) out.emplace_back(k.name, type_name(k.type));
  return out;
}

RunConfig merge_config(const RunConfig& base, const json& patch) {
  if (!patch.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c = base;
  for (const auto& [key, value] : patch.items()) {
    auto it = std::find_if(schema().begin(), schema().end(),
                           [&](const KeyInfo& k) { return key == k.name; });
    if (it == schema().end()) throw ConfigError("unknown config key \"" + key + "\"");
    if (!type_ok(it->type, value))
      throw ConfigError("config key \"" + key + "\" must be " + type_name(it->type));
    c.values[key] = value;
  }
  validate_config(c);
  return c;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("format") && j.contains("config")) return j.at("config");
  return j;
}

json parse_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override \"" + assignment + "\" must look like key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  return json{{key, value}};
}

RunConfig resolve_config(const std::optional<std::string>& path,
                         const std::vector<std::string>& overrides) {
  RunConfig c = default_config();
  if (path) c = merge_config(c, read_config_file(*path));
  for (const auto& o : overrides) c = merge_config(c, parse_override(o));
  validate_config(c);
  return c;
}

void validate_config(const RunConfig& c) {
  auto wrap = [](auto&& f) {
    try {
      f();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  };
  wrap([&] { check_params(c.params()); });
  wrap([&] { check_config(c.integrator()); });
  wrap([&] { c.classical_policy(); });
  wrap([&] { c.termination_policy(); });
  wrap([&] { check_spec(c.initial().gaussian, c.kind().mode()); });
  wrap([&] { moments_source_from_string(c.get<std::string>("moments_source")); });
  wrap([&] { correlation_policy_from_string(c.get<std::string>("correlation")); });
  if (const auto kt = opt_number(c.values.at("kappa_target")); kt && !(*kt > 0.0))
    throw ConfigError("kappa_target must be positive");
  if (c.get<long>("threads") < 0) throw ConfigError("threads must be >= 0");
  wrap([&] {
    if (auto s = c.sweep()) grid_values(*s);
  });
}

SystemKind RunConfig::kind() const {
  return {system_tag_from_string(get<std::string>("system")),
          moment_policy_from_string(get<std::string>("moment_policy"))};
}

SystemParams RunConfig::params() const {
  SystemParams p;
  p.mass = get<double>("mass");
  p.radius = get<double>("radius");
  p.hbar = get<double>("hbar");
  p.alpha = get<double>("alpha");
  p.beta = get<double>("beta");
  p.gamma = get<double>("gamma");
  return p;
}

InitialConditions RunConfig::initial() const {
  InitialConditions ic;
  auto& g = ic.gaussian;
  g.lambda = get<double>("lambda");
  g.kappa = get<double>("kappa");
  g.l = get<int>("l");
  g.m_theta = get<int>("m_theta");
  g.p_theta0 = opt_number(values.at("a"));
  g.theta0 = get<double>("theta0");
  g.phi0 = get<double>("phi0");
  g.correlation = correlation_policy_from_string(get<std::string>("correlation"));
  g.correlation_value = get<double>("correlation_value");
  ic.kappa_target = opt_number(values.at("kappa_target"));
  ic.source = moments_source_from_string(get<std::string>("moments_source"));
  return ic;
}

IntegratorConfig RunConfig::integrator() const {
  IntegratorConfig c;
  c.rel_tol = get<double>("rel_tol");
  c.abs_tol = get<double>("abs_tol");
  c.max_step = get<double>("max_step");
  c.t_end = get<double>("t_end");
  c.sample_dt = get<double>("sample_dt");
  c.uncertainty_margin = get<double>("uncertainty_margin");
  c.sin_floor = get<double>("sin_floor");
  c.max_steps = get<long>("max_steps");
  c.max_wall_seconds = get<double>("max_wall_seconds");
  return c;
}

MomentPolicy RunConfig::classical_policy() const {
  return moment_policy_from_string(get<std::string>("classical_policy"));
}

TerminationPolicy RunConfig::termination_policy() const {
  return termination_policy_from_string(get<std::string>("termination_policy"));
}

std::optional<SweepSpec> RunConfig::sweep() const {
  const auto name = get<std::string>("sweep_parameter");
  if (name.empty()) return std::nullopt;
  SweepSpec s;
  s.parameter = sweep_parameter_from_string(name);
  s.values = get<std::vector<double>>("sweep_values");
  const auto lo = opt_number(values.at("sweep_min"));
  const auto hi = opt_number(values.at("sweep_max"));
  const auto st = opt_number(values.at("sweep_step"));
  if (s.values.empty()) {
    if (!lo || !hi || !st)
      throw ConfigError("sweep needs sweep_values or all of sweep_min, sweep_max, sweep_step");
    s.range = SweepRange{*lo, *hi, *st};
  }
  s.paired_classical = get<bool>("sweep_paired");
  s.classical_policy = classical_policy();
  s.kind = kind();
  s.params = params();
  s.initial = initial();
  s.integrator = integrator();
  s.threads = get<int>("threads");
  return s;
}

std::string RunConfig::output_dir() const {
  const auto dir = get<std::string>("output_dir");
  if (!dir.empty()) return dir;
  if (const char* env = std::getenv("MOMENTOUS_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

std::string RunConfig::output_prefix() const { return get<std::string>("output_prefix"); }

bool RunConfig::wrap_phi() const { return get<bool>("wrap_phi"); }

}  // namespace momentous
