#include "momentous/state.hpp"

#include <cmath>
#include <sstream>

namespace momentous {

namespace {

constexpr std::array<std::array<int, 4>, kSphereMoments> kSphereTable = {{
    {2, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 0, 1, 0},
    {1, 0, 0, 1},
    {0, 2, 0, 0},
    {0, 1, 1, 0},
    {0, 1, 0, 1},
    {0, 0, 2, 0},
    {0, 0, 1, 1},
    {0, 0, 0, 2},
}};

constexpr std::array<std::array<int, 4>, kCircleMoments> kCircleTable = {{
    {2, 0, 0, 0},
    {1, 1, 0, 0},
    {0, 2, 0, 0},
}};

std::string tuple_text(const MomentIndex& index) {
  std::ostringstream os;
  os << '(';
  const std::size_t n = index.mode == Mode::sphere ? 4 : 2;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) os << ',';
    os << index.exponents[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::sphere ? "sphere" : "circle"; }

void check_params(const SystemParams& p) {
  auto require = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
  };
  require(p.mass, "mass");
  require(p.radius, "radius");
  require(p.hbar, "hbar");
  for (auto [v, name] : {std::pair{p.alpha, "alpha"}, {p.beta, "beta"}, {p.gamma, "gamma"}})
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

int MomentIndex::order() const {
  return exponents[0] + exponents[1] + exponents[2] + exponents[3];
}

std::string to_string(const MomentIndex& index) { return "G" + tuple_text(index); }

std::size_t moment_slot(const MomentIndex& index) { return moment_slot(index, index.mode); }

std::size_t moment_slot(const MomentIndex& index, Mode mode) {
  bool ok = index.mode == mode;
  for (int e : index.exponents) ok = ok && e >= 0;
  ok = ok && index.order() == 2;
  if (ok && mode == Mode::circle) ok = index.exponents[2] == 0 && index.exponents[3] == 0;
  if (ok) {
    if (mode == Mode::sphere) {
      for (std::size_t s = 0; s < kSphereMoments; ++s)
        if (kSphereTable[s] == index.exponents) return s;
    } else {
      for (std::size_t s = 0; s < kCircleMoments; ++s)
        if (kCircleTable[s] == index.exponents) return s;
    }
  }
  throw std::invalid_argument("invalid " + to_string(mode) + " moment index " + tuple_text(index));
}

MomentIndex moment_index(std::size_t slot, Mode mode) {
  if (slot >= moment_count(mode))
    throw std::out_of_range("moment slot " + std::to_string(slot) + " out of range for " +
                            to_string(mode));
  return {mode, mode == Mode::sphere ? kSphereTable[slot] : kCircleTable[slot]};
}

std::string moment_name(std::size_t slot, Mode mode) {
  const auto idx = moment_index(slot, mode);
  std::string s = "G";
  const std::size_t n = mode == Mode::sphere ? 4 : 2;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('0' + idx.exponents[i]);
  return s;
}

std::pair<std::size_t, std::size_t> moment_variables(std::size_t slot, Mode mode) {
  const auto idx = moment_index(slot, mode);
  std::size_t vars[2];
  std::size_t k = 0;
  for (std::size_t v = 0; v < 4; ++v)
    for (int e = 0; e < idx.exponents[v]; ++e) vars[k++] = v;
  return {vars[0], vars[1]};
}

std::size_t slot_of_variables(std::size_t i, std::size_t j, Mode mode) {
  MomentIndex idx{mode, {0, 0, 0, 0}};
  if (i >= classical_count(mode) || j >= classical_count(mode))
    throw std::out_of_range("variable position out of range");
  idx.exponents[i] += 1;
  idx.exponents[j] += 1;
  return moment_slot(idx, mode);
}

PhaseVector MomentState::to_phase() const {
  PhaseVector y{};
  std::size_t k = 0;
  y[k++] = classical.theta;
  y[k++] = classical.p_theta;
  if (mode == Mode::sphere) {
    y[k++] = classical.phi;
    y[k++] = classical.p_phi;
  }
  for (std::size_t s = 0; s < moment_count(mode); ++s) y[k++] = moments[s];
  return y;
}

MomentState MomentState::from_phase(const PhaseVector& y, Mode mode) {
  MomentState st;
  st.mode = mode;
  std::size_t k = 0;
  st.classical.theta = y[k++];
  st.classical.p_theta = y[k++];
  if (mode == Mode::sphere) {
    st.classical.phi = y[k++];
    st.classical.p_phi = y[k++];
  }
  for (std::size_t s = 0; s < moment_count(mode); ++s) st.moments[s] = y[k++];
  return st;
}

double uncertainty_theta(const MomentState& s) {
  if (s.mode == Mode::circle) return s.moments[0] * s.moments[2] - s.moments[1] * s.moments[1];
  return s.moments[0] * s.moments[4] - s.moments[1] * s.moments[1];
}

double uncertainty_phi(const MomentState& s) {
  if (s.mode == Mode::circle) return std::nan("");
  return s.moments[7] * s.moments[9] - s.moments[8] * s.moments[8];
}

ValidityReport validate_state(const MomentState& state, const SystemParams& params, double tol) {
  ValidityReport r;
  const auto y = state.to_phase();
  for (std::size_t i = 0; i < phase_dimension(state.mode); ++i) {
    if (!std::isfinite(y[i])) {
      r.finite = false;
      r.issues.push_back("non-finite entry at position " + std::to_string(i));
    }
  }
  for (std::size_t s = 0; s < moment_count(state.mode); ++s) {
    auto [i, j] = moment_variables(s, state.mode);
    if (i == j && state.moments[s] < 0.0) {
      const auto name = moment_name(s, state.mode);
      r.negative_diagonals.push_back(name);
      r.issues.push_back("negative diagonal moment " + name);
    }
  }
  const double floor = 0.25 * params.hbar * params.hbar - tol;
  r.uncertainty_theta = uncertainty_theta(state);
  r.theta_floor_ok = r.uncertainty_theta >= floor;
  if (!r.theta_floor_ok) r.issues.push_back("theta uncertainty product below hbar^2/4");
  if (state.mode == Mode::sphere) {
    r.uncertainty_phi = uncertainty_phi(state);
    r.phi_floor_ok = r.uncertainty_phi >= floor;
    if (!r.phi_floor_ok) r.issues.push_back("phi uncertainty product below hbar^2/4");
  } else {
    r.uncertainty_phi = std::nan("");
  }
  return r;
}

std::string to_string(Termination tag) {
  switch (tag) {
    case Termination::completed: return "completed";
    case Termination::uncertainty_violation: return "uncertainty_violation";
    case Termination::pole_singularity: return "pole_singularity";
    case Termination::step_failure: return "step_failure";
  }
  return "unknown";
}

SingularityError::SingularityError(double theta, double floor)
    : std::domain_error("|sin(theta)| below singularity floor " + std::to_string(floor) +
                        " at theta=" + std::to_string(theta)),
      theta_(theta) {}

}  // namespace momentous
