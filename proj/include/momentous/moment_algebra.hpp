#pragma once

#include <array>
#include <boost/rational.hpp>
#include <optional>
#include <vector>

#include "momentous/hamiltonian_model.hpp"
#include "momentous/state.hpp"

namespace momentous {

using Rational = boost::rational<long long>;

struct MomentTerm {
  std::size_t slot;
  Rational coeff;
  bool operator==(const MomentTerm&) const = default;
};

/// Linear combination of second-order moments, sorted by slot, no zero terms.
using MomentCombination = std::vector<MomentTerm>;

enum class BracketSign {
  corrected,   // (-1)^(n-s)
  as_printed,  // (-1)^s
};

/// Closed-form second-order bracket {G^A, G^B} from the K-coefficient sum.
/// Products of first-order central moments vanish identically and are not
/// generated. Throws std::invalid_argument on mixed modes or invalid indices.
MomentCombination appendix_bracket(const MomentIndex& a, const MomentIndex& b,
                                   BracketSign sign = BracketSign::corrected);

/// Precomputed brackets between all second-order moments of one mode.
class BracketTable {
 public:
  static BracketTable build(Mode mode, BracketSign sign = BracketSign::corrected);

  Mode mode() const { return mode_; }
  std::size_t size() const { return moment_count(mode_); }
  const MomentCombination& entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }

  /// Copy with {G_i, G_j} replaced (and {G_j, G_i} set to its negative).
  BracketTable with_entry(std::size_t i, std::size_t j, MomentCombination value) const;

  /// Sum of coeff * moments[slot] for entry (i, j).
  double evaluate(std::size_t i, std::size_t j, const std::array<double, kSphereMoments>& g) const;

 private:
  Mode mode_ = Mode::sphere;
  std::array<std::array<MomentCombination, kSphereMoments>, kSphereMoments> entries_{};
};

/// Shared default tables.
const BracketTable& default_table(Mode mode);

MomentCombination bracket(const MomentIndex& a, const MomentIndex& b);

/// Square matrix of the full extended Poisson structure.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
};

/// Canonical classical block, zero classical-moment block, and the moment
/// block evaluated from the bracket table at the current moments.
SquareMatrix poisson_tensor(const MomentState& state, const BracketTable& table);
SquareMatrix poisson_tensor(const MomentState& state);

/// Gradient of H_Q over the flat phase vector: H_Q = H + V + sum_s w_s
/// (H + V)_{ij(s)} G_s with w = 1/2 on the diagonal and 1 off it.
struct EffectiveHamiltonian {
  double value = 0.0;
  PhaseVector gradient{};
};
EffectiveHamiltonian effective_hamiltonian(const HamiltonianModel& model,
                                           const ThetaPotential* potential,
                                           const MomentState& state);

/// Bracket-driven derivative: dx/dt = Pi(x) grad H_Q(x). In sphere mode,
/// throws SingularityError when |sin theta| < sin_floor.
MomentState generic_rhs(const HamiltonianModel& model, const ThetaPotential* potential,
                        const MomentState& state, const SystemParams& params,
                        const BracketTable& table, double sin_floor = 1e-3);
MomentState generic_rhs(const HamiltonianModel& model, const ThetaPotential* potential,
                        const MomentState& state, const SystemParams& params,
                        double sin_floor = 1e-3);

}  // namespace momentous
