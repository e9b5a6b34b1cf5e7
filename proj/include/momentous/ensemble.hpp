#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momentous/analysis.hpp"
#include "momentous/initial_states.hpp"

namespace momentous {

enum class SweepParameter { a, gamma, beta, lambda, kappa };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::a;
  std::vector<double> values;
  std::optional<SweepRange> range;  // used when values is empty
  bool paired_classical = false;
  MomentPolicy classical_policy = MomentPolicy::zeroed;

  SystemKind kind;
  SystemParams params;
  InitialConditions initial;
  IntegratorConfig integrator;
  int threads = 0;  // 0: OpenMP default
};

/// Expanded, validated grid. Throws ConfigError for an empty grid, a range
/// with min > max or step <= 0, or non-finite values.
std::vector<double> grid_values(const SweepSpec& spec);

/// Inputs of one grid point after applying the swept value.
struct PointSetup {
  SystemParams params;
  MomentState state0;
};
PointSetup setup_point(const SweepSpec& spec, double value);

/// OpenMP over grid points (dynamic schedule). Results are stored in grid
/// order; per-point failures are recorded, never thrown.
EnsembleResult run_sweep(const SweepSpec& spec);
/// Serial reference with identical per-point results.
EnsembleResult run_sweep_serial(const SweepSpec& spec);

}  // namespace momentous
