#include "momentous/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace momentous {

namespace {

// Trigonometric factors shared by the sphere right-hand side and energy.
struct Trig {
  double s, c, c2, inv_s, inv_s2, inv_s3, inv_s4, inv_s5;

  Trig(double theta, double floor) {
    s = std::sin(theta);
    c = std::cos(theta);
    if (std::abs(s) < floor) throw SingularityError(theta, floor);
    c2 = std::cos(2.0 * theta);
    inv_s = 1.0 / s;
    inv_s2 = inv_s * inv_s;
    inv_s3 = inv_s2 * inv_s;
    inv_s4 = inv_s2 * inv_s2;
    inv_s5 = inv_s4 * inv_s;
  }
};

void circle_rhs(MomentPolicy policy, double k, const PhaseVector& y, PhaseVector& dy) {
  dy.fill(0.0);
  dy[0] = k * y[1];
  if (policy != MomentPolicy::evolve) return;
  dy[2] = 2.0 * k * y[3];
  dy[3] = k * y[4];
}

void sphere_rhs(const SystemKind& kind, const SystemParams& params, const PhaseVector& y,
                PhaseVector& dy, double sin_floor) {
  const double k = params.inverse_inertia();
  const double th = y[0], pth = y[1], pph = y[3];
  const Trig t(th, sin_floor);

  PotentialTerms pot;
  if (kind.tag == SystemTag::sphere_makarov) pot = makarov_terms(th, params);

  const bool zero = kind.policy == MomentPolicy::zeroed;
  const double* g = y.data() + 4;
  const double G2000 = zero ? 0.0 : g[0];
  const double G1001 = zero ? 0.0 : g[3];
  const double G0002 = zero ? 0.0 : g[9];

  const double pph2 = pph * pph;
  const double shape = 2.0 + t.c2;

  dy.fill(0.0);
  dy[0] = k * pth;
  dy[2] = k * pph * t.inv_s2 + k * pph * shape * t.inv_s4 * G2000 - 2.0 * k * t.c * t.inv_s3 * G1001;
  dy[1] = k * pph2 * t.c * t.inv_s3 - pot.d1 +
          2.0 * k * pph2 * t.c * (2.0 + t.c * t.c) * t.inv_s5 * G2000 - 0.5 * pot.d3 * G2000 -
          2.0 * k * pph * (1.0 + 2.0 * t.c * t.c) * t.inv_s4 * G1001 + k * t.c * t.inv_s3 * G0002;
  dy[3] = 0.0;

  if (kind.policy != MomentPolicy::evolve) return;

  // Hessian of H + V: A = d2/dtheta2, B = d2/dtheta dP_phi, D = d2/dP_theta2, E = d2/dP_phi2.
  const double A = k * pph2 * shape * t.inv_s4 + pot.d2;
  const double B = -2.0 * k * pph * t.c * t.inv_s3;
  const double D = k;
  const double E = k * t.inv_s2;

  double* dg = dy.data() + 4;
  dg[0] = 2.0 * D * g[1];
  dg[1] = D * g[4] - A * g[0] - B * g[3];
  dg[2] = D * g[5] + B * g[0] + E * g[3];
  dg[3] = D * g[6];
  dg[4] = -2.0 * A * g[1] - 2.0 * B * g[6];
  dg[5] = -A * g[2] - B * g[8] + B * g[1] + E * g[6];
  dg[6] = -A * g[3] - B * g[9];
  dg[7] = 2.0 * B * g[2] + 2.0 * E * g[8];
  dg[8] = B * g[3] + E * g[9];
  dg[9] = 0.0;
}

}  // namespace

std::string to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::circle_free: return "circle_free";
    case SystemTag::sphere_free: return "sphere_free";
    case SystemTag::sphere_makarov: return "sphere_makarov";
  }
  return "unknown";
}

std::string to_string(MomentPolicy policy) {
  switch (policy) {
    case MomentPolicy::evolve: return "evolve";
    case MomentPolicy::frozen: return "frozen";
    case MomentPolicy::zeroed: return "zeroed";
  }
  return "unknown";
}

SystemTag system_tag_from_string(const std::string& name) {
  if (name == "circle_free") return SystemTag::circle_free;
  if (name == "sphere_free") return SystemTag::sphere_free;
  if (name == "sphere_makarov") return SystemTag::sphere_makarov;
  throw std::invalid_argument("system: unknown value '" + name + "'");
}

MomentPolicy moment_policy_from_string(const std::string& name) {
  if (name == "evolve") return MomentPolicy::evolve;
  if (name == "frozen") return MomentPolicy::frozen;
  if (name == "zeroed") return MomentPolicy::zeroed;
  throw std::invalid_argument("moment_policy: unknown value '" + name + "'");
}

void check_kind(const SystemKind& kind, const MomentState& state) {
  if (kind.mode() != state.mode)
    throw std::invalid_argument("system " + to_string(kind.tag) + " requires " +
                                to_string(kind.mode()) + " state, got " + to_string(state.mode));
}

PotentialTerms makarov_terms(double theta, const SystemParams& p) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double c2 = std::cos(2.0 * theta), c3 = std::cos(3.0 * theta), c4 = std::cos(4.0 * theta);
  const double R2 = p.radius * p.radius;
  const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2, s5 = s4 * s;
  PotentialTerms t;
  t.v = -p.alpha / p.radius + (p.beta + p.gamma * c) / (R2 * s2);
  t.d1 = -(4.0 * p.beta * c + p.gamma * (c2 + 3.0)) / (2.0 * R2 * s3);
  t.d2 = (p.gamma * (23.0 * c + c3) + 8.0 * p.beta * (2.0 + c2)) / (4.0 * R2 * s4);
  t.d3 = -2.0 * p.beta * (11.0 * c + c3) / (R2 * s5) -
         p.gamma * (115.0 + 76.0 * c2 + c4) / (8.0 * R2 * s5);
  return t;
}

void rhs_phase(const SystemKind& kind, const SystemParams& params, const PhaseVector& y,
               PhaseVector& dy, double sin_floor) {
  if (kind.tag == SystemTag::circle_free)
    circle_rhs(kind.policy, params.inverse_inertia(), y, dy);
  else
    sphere_rhs(kind, params, y, dy, sin_floor);
}

MomentState rhs(const SystemKind& kind, const MomentState& state, const SystemParams& params,
                double sin_floor) {
  check_kind(kind, state);
  PhaseVector dy;
  rhs_phase(kind, params, state.to_phase(), dy, sin_floor);
  return MomentState::from_phase(dy, state.mode);
}

double energy_phase(const SystemKind& kind, const SystemParams& params, const PhaseVector& y,
                    double sin_floor) {
  const double k = params.inverse_inertia();
  const bool zero = kind.policy == MomentPolicy::zeroed;
  if (kind.tag == SystemTag::circle_free) return 0.5 * k * (y[1] * y[1] + (zero ? 0.0 : y[4]));

  const Trig t(y[0], sin_floor);
  const double pth = y[1], pph = y[3];
  const double* g = y.data() + 4;
  double h = 0.5 * k * (pth * pth + pph * pph * t.inv_s2);
  if (!zero) {
    const double A = k * pph * pph * (2.0 + t.c2) * t.inv_s4;
    const double B = -2.0 * k * pph * t.c * t.inv_s3;
    h += 0.5 * A * g[0] + B * g[3] + 0.5 * k * g[4] + 0.5 * k * t.inv_s2 * g[9];
  }
  if (kind.tag == SystemTag::sphere_makarov)
    h += zero ? makarov_terms(y[0], params).v : effective_potential(y[0], g[0], params, sin_floor);
  return h;
}

double energy(const SystemKind& kind, const MomentState& state, const SystemParams& params,
              double sin_floor) {
  check_kind(kind, state);
  return energy_phase(kind, params, state.to_phase(), sin_floor);
}

double effective_potential(double theta, double G2000, const SystemParams& p, double sin_floor) {
  const Trig t(theta, sin_floor);
  const double R2 = p.radius * p.radius;
  const double v = -p.alpha / p.radius + (p.beta + p.gamma * t.c) * t.inv_s2 / R2;
  const double bracket =
      p.gamma * (23.0 * t.c + std::cos(3.0 * theta)) + 8.0 * p.beta * (2.0 + t.c2);
  return v + G2000 * t.inv_s4 / (8.0 * R2) * bracket;
}

}  // namespace momentous
