#pragma once

// Phase-space data model: classical expectation values plus the
// second-order Weyl-ordered moments for one (circle) or two (sphere)
// canonical pairs.
//
// Moment ordering is lexicographic descending in the exponent tuple
// (a, b, c, d) over (theta, P_theta, phi, P_phi):
//
//   slot  sphere     circle
//   0     G^{2000}   G^{20}
//   1     G^{1100}   G^{11}
//   2     G^{1010}   G^{02}
//   3     G^{1001}
//   4     G^{0200}
//   5     G^{0110}
//   6     G^{0101}
//   7     G^{0020}
//   8     G^{0011}
//   9     G^{0002}
//
// Every output header lists the columns in this order.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace momentous {

inline constexpr double kPi = 3.14159265358979323846;

enum class Mode { circle, sphere };

std::string to_string(Mode mode);

inline constexpr std::size_t kSphereMoments = 10;
inline constexpr std::size_t kCircleMoments = 3;
inline constexpr std::size_t kMaxPhaseDim = 14;

constexpr std::size_t moment_count(Mode mode) {
  return mode == Mode::sphere ? kSphereMoments : kCircleMoments;
}
constexpr std::size_t classical_count(Mode mode) {
  return mode == Mode::sphere ? 4 : 2;
}
constexpr std::size_t phase_dimension(Mode mode) {
  return classical_count(mode) + moment_count(mode);
}

/// Physical constants and Makarov coefficients. alpha only shifts energies.
struct SystemParams {
  double mass = 1.0;
  double radius = 1.0;
  double hbar = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  /// 1 / (m R^2), the inverse moment of inertia.
  double inverse_inertia() const { return 1.0 / (mass * radius * radius); }
};

/// Throws std::invalid_argument naming the first non-positive field.
void check_params(const SystemParams& params);

/// Exponents of a second-order moment. Circle indices only use the first
/// two entries.
struct MomentIndex {
  Mode mode = Mode::sphere;
  std::array<int, 4> exponents{};

  static MomentIndex circle(int a, int b) { return {Mode::circle, {a, b, 0, 0}}; }
  static MomentIndex sphere(int a, int b, int c, int d) {
    return {Mode::sphere, {a, b, c, d}};
  }

  int order() const;
  bool operator==(const MomentIndex&) const = default;
};

std::string to_string(const MomentIndex& index);

/// Bijection onto 0..9 (sphere) or 0..2 (circle). Throws std::invalid_argument
/// carrying the offending tuple when the index is not a second-order index
/// for its mode.
std::size_t moment_slot(const MomentIndex& index);
std::size_t moment_slot(const MomentIndex& index, Mode mode);
MomentIndex moment_index(std::size_t slot, Mode mode);

/// Column name, e.g. "G2000" or "G11".
std::string moment_name(std::size_t slot, Mode mode);

/// The pair (i, j), i <= j, of canonical-variable positions whose
/// fluctuation product the moment in `slot` measures. Variables are ordered
/// (theta, P_theta, phi, P_phi) for the sphere and (theta, P_theta) for the
/// circle.
std::pair<std::size_t, std::size_t> moment_variables(std::size_t slot, Mode mode);
std::size_t slot_of_variables(std::size_t i, std::size_t j, Mode mode);

struct ClassicalState {
  double theta = 0.0;
  double p_theta = 0.0;
  double phi = 0.0;  // unwrapped
  double p_phi = 0.0;
};

using PhaseVector = std::array<double, kMaxPhaseDim>;

struct MomentState {
  Mode mode = Mode::sphere;
  ClassicalState classical{};
  std::array<double, kSphereMoments> moments{};

  double moment(const MomentIndex& index) const { return moments[moment_slot(index, mode)]; }
  double& moment(const MomentIndex& index) { return moments[moment_slot(index, mode)]; }

  /// Flat layout: classical variables first (2 or 4), then the moments in
  /// slot order. Unused tail entries are zero.
  PhaseVector to_phase() const;
  static MomentState from_phase(const PhaseVector& y, Mode mode);
};

/// G^{2000} G^{0200} - (G^{1100})^2; for the circle G^{20} G^{02} - (G^{11})^2.
double uncertainty_theta(const MomentState& state);
/// G^{0020} G^{0002} - (G^{0011})^2. Not defined for the circle (returns NaN).
double uncertainty_phi(const MomentState& state);

struct ValidityReport {
  bool finite = true;
  std::vector<std::string> negative_diagonals;
  double uncertainty_theta = 0.0;
  double uncertainty_phi = 0.0;
  bool theta_floor_ok = true;
  bool phi_floor_ok = true;
  std::vector<std::string> issues;

  bool valid() const { return issues.empty(); }
};

/// Pure check of finiteness, variance signs and the uncertainty floors
/// (hbar^2/4 - tol).
ValidityReport validate_state(const MomentState& state, const SystemParams& params, double tol);

enum class Termination { completed, uncertainty_violation, pole_singularity, step_failure };

std::string to_string(Termination tag);

struct TerminationStatus {
  Termination tag = Termination::completed;
  double time = 0.0;
  std::string detail;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid user configuration, raised before any computation starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when |sin theta| falls below the singularity floor.
class SingularityError : public std::domain_error {
 public:
  SingularityError(double theta, double floor);
  double theta() const { return theta_; }

 private:
  double theta_;
};

}  // namespace momentous
