#pragma once

#include <string>

#include "momentous/state.hpp"

namespace momentous {

enum class SystemTag { circle_free, sphere_free, sphere_makarov };

/// evolve: full semiclassical flow.
/// frozen: classical variables feel the current moments, moments do not move.
/// zeroed: moments treated as zero (classical limit).
enum class MomentPolicy { evolve, frozen, zeroed };

struct SystemKind {
  SystemTag tag = SystemTag::sphere_free;
  MomentPolicy policy = MomentPolicy::evolve;

  Mode mode() const { return tag == SystemTag::circle_free ? Mode::circle : Mode::sphere; }
};

std::string to_string(SystemTag tag);
std::string to_string(MomentPolicy policy);
SystemTag system_tag_from_string(const std::string& name);
MomentPolicy moment_policy_from_string(const std::string& name);

/// Throws std::invalid_argument when the state's mode does not match the kind.
void check_kind(const SystemKind& kind, const MomentState& state);

/// Makarov V(theta) and its first three theta-derivatives.
struct PotentialTerms {
  double v = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
};
PotentialTerms makarov_terms(double theta, const SystemParams& params);

/// Derivative of the flat phase vector. Sphere kinds throw SingularityError
/// when |sin theta| < sin_floor.
void rhs_phase(const SystemKind& kind, const SystemParams& params, const PhaseVector& y,
               PhaseVector& dy, double sin_floor = 1e-3);

MomentState rhs(const SystemKind& kind, const MomentState& state, const SystemParams& params,
                double sin_floor = 1e-3);

/// H_Q (free kinds) or H_Q + V_Q (Makarov). Zeroed policy gives the classical
/// energy.
double energy(const SystemKind& kind, const MomentState& state, const SystemParams& params,
              double sin_floor = 1e-3);
double energy_phase(const SystemKind& kind, const SystemParams& params, const PhaseVector& y,
                    double sin_floor = 1e-3);

/// V(theta) + (G2000 / (8 R^2 sin^4)) (gamma (23 cos + cos 3theta) + 8 beta (2 + cos 2theta)).
double effective_potential(double theta, double G2000, const SystemParams& params,
                           double sin_floor = 1e-3);

}  // namespace momentous
