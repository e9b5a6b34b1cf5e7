#pragma once

// Quadrature reference values built only from Boost.Math integrators and
// the C library exponential. Nothing here calls into the library under test.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

template <class F>
double integrate(F&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-15);
}

inline double erf_quad(double x) {
  return 2.0 / std::sqrt(pi) * integrate([](double t) { return std::exp(-t * t); }, 0.0, x);
}

inline double erfi_quad(double x) {
  return 2.0 / std::sqrt(pi) * integrate([](double t) { return std::exp(t * t); }, 0.0, x);
}

/// F(x) = int_0^x exp(t^2 - x^2) dt, kept bounded by folding the exponent.
inline double dawson_quad(double x) {
  return integrate([x](double t) { return std::exp((t - x) * (t + x)); }, 0.0, x);
}

/// F(z) = z int_0^1 exp(z^2 (s^2 - 1)) ds along the straight path.
inline std::complex<double> dawson_quad(std::complex<double> z) {
  auto f = [z](double s, bool imag) {
    const std::complex<double> v = z * std::exp(z * z * (s * s - 1.0));
    return imag ? v.imag() : v.real();
  };
  const double re = integrate([&](double s) { return f(s, false); }, 0.0, 1.0);
  const double im = integrate([&](double s) { return f(s, true); }, 0.0, 1.0);
  return {re, im};
}

/// Circle Gaussian psi = exp(-lambda theta^2 / 2) on [-pi, pi]:
/// <theta^2> and <psi| P^2 |psi> with P = -i hbar d/dtheta acting on psi.
struct CircleMoments {
  double g20;
  double g02;
};

inline CircleMoments circle_moments_quad(double lambda, double hbar) {
  auto w = [lambda](double t) { return std::exp(-lambda * t * t); };
  const double n = integrate(w, -pi, pi);
  const double x2 = integrate([&](double t) { return t * t * w(t); }, -pi, pi) / n;
  // -psi psi'' = (lambda - lambda^2 theta^2) psi^2
  const double p2 =
      integrate([&](double t) { return (lambda - lambda * lambda * t * t) * w(t); }, -pi, pi) / n;
  return {x2, hbar * hbar * p2};
}

/// Polar Gaussian psi = exp(-kappa (theta - pi/2)^2 / 2) with measure
/// sin(theta): <u^2> with u = theta - pi/2, and <|P psi|^2> for the
/// geometric momentum P = -i hbar (d/dtheta + cot(theta) / 2).
struct PolarMoments {
  double g2000;
  double g0200;
};

inline PolarMoments polar_moments_quad(double kappa, double hbar) {
  const double edge = pi / 2.0;
  auto w = [kappa](double u) { return std::exp(-kappa * u * u) * std::cos(u); };
  const double n = integrate(w, -edge, edge);
  const double u2 = integrate([&](double u) { return u * u * w(u); }, -edge, edge) / n;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto dpsi = [kappa](double u) {
    const double g = kappa * u + 0.5 * std::tan(u);
    return std::exp(-kappa * u * u) * std::cos(u) * g * g;
  };
  const double p2 = ts.integrate(dpsi, -edge, edge) / n;
  return {u2, hbar * hbar * p2};
}

}  // namespace oracle
