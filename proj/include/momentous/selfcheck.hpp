#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "momentous/integrator.hpp"

namespace momentous {

/// Smallest symplectic eigenvalue of the covariance block; a state is
/// physical when it is at least hbar/2.
double min_symplectic_eigenvalue(const MomentState& state);

/// Random classical point away from the poles plus a random covariance
/// rescaled so that its smallest symplectic eigenvalue lies in
/// [hbar/2 (1 + 1e-3), 4 hbar].
MomentState random_valid_state(Mode mode, std::mt19937_64& rng, const SystemParams& params);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckLine> checks;
  bool pass() const;
};

struct SelfCheckOptions {
  std::vector<std::string> suites;  // empty: all
  /// Negates the sphere bracket {G_i, G_j} (and its transpose) in the
  /// oracle suite, to confirm the suite detects a corrupted table.
  std::optional<std::pair<std::size_t, std::size_t>> flip_bracket;
  std::size_t random_states = 100;
  std::uint64_t seed = 20240611;
};

std::vector<std::string> suite_names();

SuiteResult oracle_suite(const SelfCheckOptions& options);
SuiteResult conservation_suite();
SuiteResult uncertainty_suite();
SuiteResult convergence_suite();

/// Throws ConfigError for an unknown suite name.
std::vector<SuiteResult> run_selfcheck(const SelfCheckOptions& options);

}  // namespace momentous
