#include "momentous/initial_states.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <complex>
#include <sstream>

#include "momentous/special_functions.hpp"

namespace momentous {

namespace {

constexpr double kKappaMin = 1.001e-4;
constexpr double kKappaMax = 250.0;

// F(chi) + F(conj chi), real by conjugation symmetry.
double dawson_pair_sum(double kappa) {
  const double rk = std::sqrt(kappa);
  const std::complex<double> chi(1.0 / (2.0 * rk), -kPi * kappa / (2.0 * rk));
  return 2.0 * dawson(chi).real();
}

double azimuthal_boundary_ratio(double lambda) {
  return std::exp(-kPi * kPi * lambda) / erf_real(kPi * std::sqrt(lambda));
}

}  // namespace

std::string to_string(CorrelationPolicy policy) {
  switch (policy) {
    case CorrelationPolicy::zero: return "zero";
    case CorrelationPolicy::boundary_magnitude: return "boundary_magnitude";
    case CorrelationPolicy::explicit_value: return "explicit";
  }
  return "zero";
}

CorrelationPolicy correlation_policy_from_string(const std::string& name) {
  if (name == "zero") return CorrelationPolicy::zero;
  if (name == "boundary_magnitude") return CorrelationPolicy::boundary_magnitude;
  if (name == "explicit") return CorrelationPolicy::explicit_value;
  throw std::invalid_argument("correlation: unknown policy '" + name + "'");
}

void check_spec(const GaussianSpec& spec, Mode mode) {
  if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda))
    throw std::invalid_argument("lambda must be positive");
  if (mode == Mode::sphere) {
    if (!(spec.kappa > 0.0) || !std::isfinite(spec.kappa))
      throw std::invalid_argument("kappa must be positive");
    if (!(spec.theta0 > 0.0 && spec.theta0 < kPi))
      throw std::invalid_argument("theta0 must lie in (0, pi)");
  }
  if (spec.p_theta0 && !std::isfinite(*spec.p_theta0))
    throw std::invalid_argument("a must be finite");
  if (!std::isfinite(spec.correlation_value))
    throw std::invalid_argument("correlation_value must be finite");
}

double circle_position_variance(double lambda) {
  return 0.5 / lambda - std::sqrt(kPi / lambda) * azimuthal_boundary_ratio(lambda);
}

MomentState circle_initial_moments(const GaussianSpec& spec, const SystemParams& params) {
  check_params(params);
  check_spec(spec, Mode::circle);
  const double hbar = params.hbar;
  const double g20 = circle_position_variance(spec.lambda);
  if (!(g20 > 0.0))
    throw DomainError("lambda=" + std::to_string(spec.lambda) +
                      " gives non-positive G20; wave packet not localized on the circle");

  MomentState s;
  s.mode = Mode::circle;
  s.classical.theta = 0.0;
  s.classical.p_theta = spec.p_theta0 ? *spec.p_theta0 : spec.l * hbar;
  s.moments[0] = g20;
  s.moments[2] = spec.lambda * hbar * hbar * (1.0 - spec.lambda * g20);
  switch (spec.correlation) {
    case CorrelationPolicy::zero: s.moments[1] = 0.0; break;
    case CorrelationPolicy::boundary_magnitude:
      s.moments[1] = 0.5 * hbar * (1.0 - 2.0 * spec.lambda * g20);
      break;
    case CorrelationPolicy::explicit_value: s.moments[1] = spec.correlation_value; break;
  }
  return s;
}

double sphere_polar_variance(double kappa) {
  const double S = dawson_pair_sum(kappa);
  return (2.0 * std::sqrt(kappa) / S + 2.0 * kappa - 1.0) / (4.0 * kappa * kappa);
}

double sphere_polar_momentum_variance(double kappa, double hbar) {
  const double S = dawson_pair_sum(kappa);
  return hbar * hbar * kappa * kappa / (2.0 * std::sqrt(kappa) / S + 2.0 * kappa - 1.0);
}

MomentState sphere_initial_moments(const GaussianSpec& spec, const SystemParams& params) {
  check_params(params);
  check_spec(spec, Mode::sphere);
  const double hbar = params.hbar;
  const double lam = spec.lambda;

  MomentState s;
  s.mode = Mode::sphere;
  s.classical.theta = spec.theta0;
  s.classical.p_theta = spec.p_theta0 ? *spec.p_theta0 : spec.m_theta * hbar;
  s.classical.phi = spec.phi0;
  s.classical.p_phi = spec.l * hbar;

  s.moments[0] = sphere_polar_variance(spec.kappa);
  s.moments[4] = sphere_polar_momentum_variance(spec.kappa, hbar);
  s.moments[7] = circle_position_variance(lam);
  s.moments[9] =
      0.5 * hbar * hbar * lam * (2.0 * std::sqrt(kPi * lam) * azimuthal_boundary_ratio(lam) + 1.0);
  return s;
}

KappaRange kappa_search_range() {
  return {kKappaMin, kKappaMax, sphere_polar_variance(kKappaMax), sphere_polar_variance(kKappaMin)};
}

double solve_kappa(double target, const SystemParams& params) {
  check_params(params);
  const auto range = kappa_search_range();
  if (!(target > range.g_min && target < range.g_max)) {
    std::ostringstream os;
    os.precision(12);
    os << "target G2000=" << target << " outside attainable interval (" << range.g_min << ", "
       << range.g_max << ")";
    throw DomainError(os.str());
  }
  auto f = [target](double k) { return sphere_polar_variance(k) - target; };
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, range.kappa_min, range.kappa_max, boost::math::tools::eps_tolerance<double>(52), iters);
  const double k = 0.5 * (lo + hi);
  if (std::abs(f(k)) >= 1e-10) throw DomainError("solve_kappa: residual above 1e-10");
  return k;
}

std::string to_string(MomentsSource source) {
  return source == MomentsSource::tabulated ? "tabulated" : "closed_form";
}

MomentsSource moments_source_from_string(const std::string& name) {
  if (name == "tabulated") return MomentsSource::tabulated;
  if (name == "closed_form") return MomentsSource::closed_form;
  throw std::invalid_argument("moments_source: unknown value '" + name + "'");
}

MomentState make_initial_state(Mode mode, const InitialConditions& init,
                               const SystemParams& params) {
  GaussianSpec spec = init.gaussian;
  if (mode == Mode::circle) return circle_initial_moments(spec, params);
  if (init.source == MomentsSource::tabulated) {
    check_params(params);
    check_spec(spec, Mode::sphere);
    MomentState s;
    s.mode = Mode::sphere;
    s.classical.theta = spec.theta0;
    s.classical.p_theta = spec.p_theta0 ? *spec.p_theta0 : spec.m_theta * params.hbar;
    s.classical.phi = spec.phi0;
    s.classical.p_phi = spec.l * params.hbar;
    s.moments[0] = kTabulatedSphereMoments[0];
    s.moments[4] = kTabulatedSphereMoments[1];
    s.moments[7] = kTabulatedSphereMoments[2];
    s.moments[9] = kTabulatedSphereMoments[3];
    return s;
  }
  if (init.kappa_target) spec.kappa = solve_kappa(*init.kappa_target, params);
  return sphere_initial_moments(spec, params);
}

}  // namespace momentous
