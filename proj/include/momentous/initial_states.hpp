#pragma once

#include <array>
#include <optional>
#include <string>

#include "momentous/state.hpp"

namespace momentous {

/// How the circle's initial G^{11} is chosen.
///   zero            -> 0 (infinite-domain Gaussian)
///   boundary_magnitude -> (hbar/2)(1 - 2 lambda G^{20}_0), real magnitude of the boundary term
///   explicit_value  -> GaussianSpec::correlation_value
enum class CorrelationPolicy { zero, boundary_magnitude, explicit_value };

std::string to_string(CorrelationPolicy policy);
CorrelationPolicy correlation_policy_from_string(const std::string& name);

struct GaussianSpec {
  double lambda = 10.0;
  double kappa = 10.0;
  int l = 10;
  int m_theta = 1;
  double theta0 = kPi / 2.0;
  double phi0 = 0.0;
  /// Overrides P_theta0 = m_theta * hbar when set.
  std::optional<double> p_theta0;
  CorrelationPolicy correlation = CorrelationPolicy::zero;
  double correlation_value = 0.0;
};

/// Throws std::invalid_argument naming the offending field.
void check_spec(const GaussianSpec& spec, Mode mode);

/// Closed-form G^{20}_0 for the truncated circle Gaussian.
double circle_position_variance(double lambda);

MomentState circle_initial_moments(const GaussianSpec& spec, const SystemParams& params);
MomentState sphere_initial_moments(const GaussianSpec& spec, const SystemParams& params);

/// G^{2000}_0 and G^{0200}_0 as functions of kappa alone (hbar = 1 for the latter).
double sphere_polar_variance(double kappa);
double sphere_polar_momentum_variance(double kappa, double hbar);

/// Interval of kappa over which the polar closed forms are evaluated, and
/// the matching (decreasing) range of G^{2000}_0.
struct KappaRange {
  double kappa_min;
  double kappa_max;
  double g_min;  // at kappa_max
  double g_max;  // at kappa_min
};
KappaRange kappa_search_range();

/// Sphere moments as tabulated for the reference profile: G2000, G0200,
/// G0020, G0002 (cross moments zero).
inline constexpr std::array<double, 4> kTabulatedSphereMoments = {0.0475, 5.26316, 0.05, 5.0};

enum class MomentsSource { closed_form, tabulated };

std::string to_string(MomentsSource source);
MomentsSource moments_source_from_string(const std::string& name);

/// Everything needed to build an initial state for either mode.
struct InitialConditions {
  GaussianSpec gaussian;
  /// When set, kappa is recovered with solve_kappa instead of read from gaussian.
  std::optional<double> kappa_target;
  MomentsSource source = MomentsSource::tabulated;
};

MomentState make_initial_state(Mode mode, const InitialConditions& init,
                               const SystemParams& params);

/// Inverts G^{2000}_0(kappa) = target by bracketing root solve.
/// Throws DomainError carrying the attainable interval when out of range.
double solve_kappa(double target_G2000, const SystemParams& params);

}  // namespace momentous
