#include "momentous/hamiltonian_model.hpp"

#include <cmath>

namespace momentous {

namespace ad = boost::math::differentiation;

HamiltonianModel::HamiltonianModel(Mode mode, std::string name, Function h)
    : mode_(mode), name_(std::move(name)), h_(std::move(h)) {}

double HamiltonianModel::value(const ClassicalState& x) const {
  return h_(Jet(x.theta), Jet(x.p_theta), Jet(x.phi), Jet(x.p_phi)).derivative(0, 0, 0, 0);
}

Partials HamiltonianModel::partials(const ClassicalState& x) const {
  const auto vars = ad::make_ftuple<double, 3, 3, 3, 3>(x.theta, x.p_theta, x.phi, x.p_phi);
  const Jet a = std::get<0>(vars);
  const Jet b = std::get<1>(vars);
  const Jet c = std::get<2>(vars);
  const Jet d = std::get<3>(vars);
  const Jet y = h_(a, b, c, d);

  Partials p;
  p.dim = classical_count(mode_);
  auto deriv = [&y](std::array<int, 4> o) { return y.derivative(o[0], o[1], o[2], o[3]); };
  p.value = deriv({0, 0, 0, 0});
  for (std::size_t i = 0; i < p.dim; ++i) {
    std::array<int, 4> oi{};
    oi[i] = 1;
    p.grad[i] = deriv(oi);
    for (std::size_t j = 0; j < p.dim; ++j) {
      std::array<int, 4> oij = oi;
      oij[j] += 1;
      p.hess[i][j] = deriv(oij);
      for (std::size_t k = 0; k < p.dim; ++k) {
        std::array<int, 4> oijk = oij;
        oijk[k] += 1;
        p.third[i][j][k] = deriv(oijk);
      }
    }
  }
  return p;
}

HamiltonianModel HamiltonianModel::free_circle(const SystemParams& params) {
  const double k = params.inverse_inertia();
  return {Mode::circle, "free_circle",
          [k](const Jet&, const Jet& p, const Jet&, const Jet&) { return 0.5 * k * p * p; }};
}

HamiltonianModel HamiltonianModel::free_sphere(const SystemParams& params) {
  const double k = params.inverse_inertia();
  return {Mode::sphere, "free_sphere",
          [k](const Jet& th, const Jet& pth, const Jet&, const Jet& pph) {
            const Jet s = sin(th);
            return 0.5 * k * (pth * pth + pph * pph / (s * s));
          }};
}

HamiltonianModel HamiltonianModel::harmonic_oscillator(double omega) {
  return {Mode::circle, "harmonic_oscillator",
          [omega](const Jet& q, const Jet& p, const Jet&, const Jet&) {
            return 0.5 * (p * p + omega * omega * q * q);
          }};
}

ThetaPotential::ThetaPotential(std::string name, Function v)
    : name_(std::move(name)), v_(std::move(v)) {}

std::array<double, 5> ThetaPotential::derivatives(double theta) const {
  const Jet1 y = v_(ad::make_fvar<double, 4>(theta));
  return {y.derivative(0), y.derivative(1), y.derivative(2), y.derivative(3), y.derivative(4)};
}

ThetaPotential ThetaPotential::makarov(const SystemParams& params) {
  const double R = params.radius;
  const double a = params.alpha, b = params.beta, g = params.gamma;
  return {"makarov", [=](const Jet1& th) {
            const Jet1 s = sin(th);
            return -a / R + (b + g * cos(th)) / (R * R * s * s);
          }};
}

}  // namespace momentous
