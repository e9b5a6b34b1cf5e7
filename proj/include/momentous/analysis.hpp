#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momentous/integrator.hpp"

namespace momentous {

struct UncertaintySeries {
  std::vector<double> t;
  std::vector<double> dG_theta;
  std::vector<double> dG_phi;
  double min_theta = 0.0;
  double min_phi = 0.0;
};

/// Recomputed from the stored moments only.
UncertaintySeries uncertainty_products(const Trajectory& traj);

struct PhaseShift {
  std::vector<double> t;
  std::vector<double> dtheta;  // semiclassical - classical
  std::vector<double> dphi;
  double dtheta_end = 0.0;
  double dphi_end = 0.0;
};

/// Evaluated on the semiclassical sample grid over the common time span;
/// the classical run is resampled through its dense output.
/// Throws std::invalid_argument when the runs cannot be aligned.
PhaseShift phase_shift(const Trajectory& semiclassical, const Trajectory& classical);

/// (2 P_phi / m R^2) [G2000_0 t + (2 G1100_0 / m R^2) t^2], a near-equator estimate.
double predicted_phase_shift(const SystemParams& params, double p_phi, double G2000_0,
                             double G1100_0, double t);
/// L dx0^2 t / (hbar R^2).
double phase_shift_scaling(const SystemParams& params, double L, double dx0_squared, double t);

/// One grid point of a sweep.
struct EnsembleRun {
  double value = 0.0;
  Trajectory semiclassical;
  std::optional<Trajectory> classical;
  std::string error;  // non-empty when the point could not be run

  bool ok() const { return error.empty(); }
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

MetricSummary summarize(const std::vector<double>& values);

struct EnsembleSummary {
  double t_eval = 0.0;
  MetricSummary abs_dtheta;
  MetricSummary abs_dphi;
  MetricSummary rel_dphi;        // |dphi| / |phi_cl|
  MetricSummary rel_dG2000;      // (G2000(t) - G2000(0)) / G2000(0)
};

struct EnsembleResult {
  std::string parameter;
  std::vector<EnsembleRun> runs;  // in grid order
  std::optional<EnsembleSummary> summary;
};

enum class TerminationPolicy { last_valid_state, exclude_terminated };

std::string to_string(TerminationPolicy policy);
TerminationPolicy termination_policy_from_string(const std::string& name);

/// Table-style statistics over matched pairs. Throws std::invalid_argument
/// when a run lacks its classical partner.
EnsembleSummary ensemble_stats(const EnsembleResult& ensemble, double t_eval);

/// theta of a run at t_eval, or nullopt when the policy excludes it.
std::optional<double> theta_at(const Trajectory& traj, double t_eval, TerminationPolicy policy);

struct HemisphereCount {
  double ratio = 0.0;  // N(theta > pi/2) / N(theta < pi/2), +inf when the denominator is 0
  std::size_t south = 0;
  std::size_t north = 0;
  std::size_t equator = 0;
  std::size_t excluded = 0;
};

/// Runs with |theta - pi/2| <= equator_tol count toward neither hemisphere.
HemisphereCount hemisphere_ratio(const EnsembleResult& ensemble, double t_eval,
                                 TerminationPolicy policy = TerminationPolicy::last_valid_state,
                                 double equator_tol = 1e-9);

/// Ensemble mean of theta at t_eval under the same policy; nullopt if empty.
std::optional<double> mean_theta(const EnsembleResult& ensemble, double t_eval,
                                 TerminationPolicy policy = TerminationPolicy::last_valid_state);

/// First time theta(t) crosses theta_star, localized on the dense output.
std::optional<double> time_to_theta(const Trajectory& traj, double theta_star);

}  // namespace momentous
