#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "momentous/dynamics.hpp"
#include "momentous/moment_algebra.hpp"
#include "momentous/state.hpp"

namespace momentous {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 0.25;
  double t_end = 10.0;
  double sample_dt = 0.01;
  double uncertainty_margin = 1e-10;
  double sin_floor = 1e-3;
  double min_step = 1e-14;
  long max_steps = 5'000'000;
  double max_wall_seconds = 60.0;
  double event_time_tol = 1e-12;
};

/// Throws std::invalid_argument naming the offending field.
void check_config(const IntegratorConfig& config);

struct Sample {
  double t = 0.0;
  MomentState state;
  double dG_theta = 0.0;
  double dG_phi = 0.0;
  double energy = 0.0;
};

/// Quartic Hermite-type interpolant of one accepted Dormand-Prince step.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<PhaseVector, 5> r{};

  PhaseVector operator()(double t) const;
};

struct Trajectory {
  Mode mode = Mode::sphere;
  std::vector<Sample> samples;
  std::vector<DenseSegment> dense;
  TerminationStatus status;
  IntegratorConfig config;
  std::optional<SystemKind> kind;
  SystemParams params;
  long accepted_steps = 0;
  long rejected_steps = 0;

  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
  /// State at time t within [0, back().t]; uses dense output when present,
  /// linear interpolation of samples otherwise.
  MomentState state_at(double t) const;
};

/// Vector field plus the diagnostics the integrator needs.
struct Flow {
  Mode mode = Mode::sphere;
  std::function<void(const PhaseVector&, PhaseVector&)> derivative;
  std::function<double(const PhaseVector&)> energy;
  bool uncertainty_events = true;
  double hbar = 1.0;
};

Flow make_flow(const SystemKind& kind, const SystemParams& params);
/// The bracket-derived vector field. `potential` must outlive the flow.
Flow make_generic_flow(const HamiltonianModel& model, const ThetaPotential* potential,
                       const SystemParams& params,
                       const BracketTable* table = nullptr);

/// Adaptive Dormand-Prince 5(4) integration with PI step control, dense
/// sampling on the sample_dt grid, and event termination for uncertainty
/// violation (evolve policy) and pole approach (sphere).
/// Throws std::invalid_argument / DomainError on precondition failures.
Trajectory integrate(const SystemKind& kind, const MomentState& state0, const SystemParams& params,
                     const IntegratorConfig& config = {});
Trajectory integrate_flow(const Flow& flow, const MomentState& state0,
                          const IntegratorConfig& config = {});

struct ConvergenceReport {
  std::vector<double> tolerances;
  std::vector<PhaseVector> finals;
  std::vector<double> deltas;  // max-norm between successive levels
  bool monotone = false;
  double min_ratio = 0.0;      // smallest deltas[i] / deltas[i+1]
  bool default_in_regime = false;  // monotone and the default rel_tol lies inside the ladder
  std::string note;
};

/// Requires at least three strictly decreasing tolerances; violations of
/// monotone convergence are flagged in the report, not thrown.
ConvergenceReport convergence_check(const SystemKind& kind, const MomentState& state0,
                                    const SystemParams& params,
                                    const std::vector<double>& tolerances,
                                    IntegratorConfig base = {});
ConvergenceReport convergence_check(const Flow& flow, const MomentState& state0,
                                    const std::vector<double>& tolerances,
                                    IntegratorConfig base = {});

}  // namespace momentous
