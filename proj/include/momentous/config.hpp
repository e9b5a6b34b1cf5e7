#pragma once

// Flat declarative run configuration. Every key is typed; unknown keys and
// wrong types are rejected with a ConfigError naming the key.

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "momentous/ensemble.hpp"

namespace momentous {

inline constexpr const char* kFormatVersion = "momentous-output/1";

struct RunConfig {
  nlohmann::json values;  // fully resolved: every schema key present

  SystemKind kind() const;
  SystemParams params() const;
  InitialConditions initial() const;
  IntegratorConfig integrator() const;
  MomentPolicy classical_policy() const;
  TerminationPolicy termination_policy() const;
  /// Present when a sweep parameter is configured.
  std::optional<SweepSpec> sweep() const;

  std::string output_dir() const;
  std::string output_prefix() const;
  bool wrap_phi() const;

  template <class T>
  T get(const std::string& key) const {
    return values.at(key).get<T>();
  }
};

/// Defaults: free sphere, tabulated reference moments, P_theta0 = 1.
RunConfig default_config();

/// Keys with their type names, in documentation order.
std::vector<std::pair<std::string, std::string>> config_schema();

/// Merges `patch` over `base`; validates keys, types and values.
RunConfig merge_config(const RunConfig& base, const nlohmann::json& patch);

/// Reads a config file. A previously written JSON summary is also accepted,
/// in which case its embedded config is used.
nlohmann::json read_config_file(const std::string& path);

/// Parses "key=value". The value is read as JSON when possible, else as a string.
nlohmann::json parse_override(const std::string& assignment);

/// Full pipeline: defaults, then file, then overrides (overrides win).
RunConfig resolve_config(const std::optional<std::string>& path,
                         const std::vector<std::string>& overrides);

/// Semantic validation (positivity, enum names, sweep shape).
void validate_config(const RunConfig& config);

}  // namespace momentous
