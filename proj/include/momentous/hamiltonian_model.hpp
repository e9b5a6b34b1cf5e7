#pragma once

#include <array>
#include <boost/math/differentiation/autodiff.hpp>
#include <functional>
#include <string>

#include "momentous/state.hpp"

namespace momentous {

/// Forward-mode jet carrying mixed partials up to order 3 in each of the
/// four classical variables.
using Jet = boost::math::differentiation::autodiff_fvar<double, 3, 3, 3, 3>;
/// One-variable jet for theta-only potentials, up to order 4.
using Jet1 = boost::math::differentiation::autodiff_fvar<double, 4>;

/// Partial derivatives of a scalar function of (theta, P_theta, phi, P_phi)
/// at a point. Only the first `dim` variables are meaningful.
struct Partials {
  std::size_t dim = 4;
  double value = 0.0;
  std::array<double, 4> grad{};
  std::array<std::array<double, 4>, 4> hess{};
  std::array<std::array<std::array<double, 4>, 4>, 4> third{};
};

/// Classical Hamiltonian H(theta, P_theta, phi, P_phi).
class HamiltonianModel {
 public:
  using Function = std::function<Jet(const Jet&, const Jet&, const Jet&, const Jet&)>;

  HamiltonianModel(Mode mode, std::string name, Function h);

  Mode mode() const { return mode_; }
  const std::string& name() const { return name_; }

  double value(const ClassicalState& x) const;
  Partials partials(const ClassicalState& x) const;

  static HamiltonianModel free_circle(const SystemParams& params);
  static HamiltonianModel free_sphere(const SystemParams& params);
  /// H = (p^2 + w^2 q^2)/2 in the circle slots, for integrator checks.
  static HamiltonianModel harmonic_oscillator(double omega);

 private:
  Mode mode_;
  std::string name_;
  Function h_;
};

/// Potential depending on theta alone.
class ThetaPotential {
 public:
  using Function = std::function<Jet1(const Jet1&)>;

  ThetaPotential(std::string name, Function v);

  const std::string& name() const { return name_; }
  /// V and its first four theta-derivatives.
  std::array<double, 5> derivatives(double theta) const;

  static ThetaPotential makarov(const SystemParams& params);

 private:
  std::string name_;
  Function v_;
};

}  // namespace momentous
