#include "momentous/moment_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace momentous {

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Iterates every tuple t with lo[i] <= t[i] <= hi[i].
template <class F>
void for_each_tuple(const std::vector<int>& lo, const std::vector<int>& hi, F&& f) {
  const std::size_t k = lo.size();
  for (std::size_t i = 0; i < k; ++i)
    if (lo[i] > hi[i]) return;
  std::vector<int> t = lo;
  while (true) {
    f(t);
    std::size_t i = 0;
    while (i < k && ++t[i] > hi[i]) {
      t[i] = lo[i];
      ++i;
    }
    if (i == k) return;
  }
}

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

Rational k_coefficient(int n, int s, const std::vector<int>& e, const std::vector<int>& a,
                       const std::vector<int>& b, const std::vector<int>& c,
                       const std::vector<int>& d) {
  const std::size_t k = e.size();
  std::vector<int> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] = std::max({0, e[i] - s, e[i] - a[i], e[i] - d[i]});
    hi[i] = std::min({b[i], c[i], n - s, e[i]});
  }
  Rational total(0);
  for_each_tuple(lo, hi, [&](const std::vector<int>& g) {
    if (sum(g) != n - s) return;
    Rational term(1, factorial(s) * factorial(n - s));
    for (std::size_t i = 0; i < k; ++i) {
      const long long num =
          binom(a[i], e[i] - g[i]) * binom(b[i], g[i]) * binom(c[i], g[i]) * binom(d[i], e[i] - g[i]);
      const long long den = binom(n - s, g[i]) * binom(s, e[i] - g[i]);
      term *= Rational(num, den);
    }
    total += term;
  });
  return total;
}

}  // namespace

MomentCombination appendix_bracket(const MomentIndex& A, const MomentIndex& B, BracketSign sign) {
  if (A.mode != B.mode) throw std::invalid_argument("bracket: mixed modes");
  const Mode mode = A.mode;
  moment_slot(A, mode);
  moment_slot(B, mode);

  const std::size_t k = mode == Mode::sphere ? 2 : 1;
  std::vector<int> a(k), b(k), c(k), d(k);
  for (std::size_t i = 0; i < k; ++i) {
    a[i] = A.exponents[2 * i];
    b[i] = A.exponents[2 * i + 1];
    c[i] = B.exponents[2 * i];
    d[i] = B.exponents[2 * i + 1];
  }
  int overlap = 0;
  for (std::size_t i = 0; i < k; ++i) overlap += std::min(a[i], d[i]) + std::min(b[i], c[i]);
  const int n_max = overlap <= 1 ? 1 : overlap - 1;

  std::map<std::size_t, Rational> acc;
  for (int n = 1; n <= n_max; ++n) {
    // (i hbar / 2)^(n-1) contributes only at n = 1 for second-order moments.
    if (n != 1) continue;
    for (int s = 0; s <= n; ++s) {
      std::vector<int> lo(k, 0), hi(k);
      for (std::size_t i = 0; i < k; ++i)
        hi[i] = std::min({a[i], d[i], s}) + std::min({b[i], c[i], n - s});
      for_each_tuple(lo, hi, [&](const std::vector<int>& e) {
        if (sum(e) != n) return;
        Rational K = k_coefficient(n, s, e, a, b, c, d);
        if (K == Rational(0)) return;
        const int parity = sign == BracketSign::corrected ? n - s : s;
        if (parity % 2) K = -K;
        MomentIndex out{mode, {0, 0, 0, 0}};
        for (std::size_t i = 0; i < k; ++i) {
          out.exponents[2 * i] = a[i] + c[i] - e[i];
          out.exponents[2 * i + 1] = b[i] + d[i] - e[i];
        }
        acc[moment_slot(out, mode)] += K;
      });
    }
  }
  MomentCombination result;
  for (const auto& [slot, coeff] : acc)
    if (coeff != Rational(0)) result.push_back({slot, coeff});
  return result;
}

BracketTable BracketTable::build(Mode mode, BracketSign sign) {
  BracketTable t;
  t.mode_ = mode;
  const std::size_t n = moment_count(mode);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.entries_[i][j] = appendix_bracket(moment_index(i, mode), moment_index(j, mode), sign);
  return t;
}

BracketTable BracketTable::with_entry(std::size_t i, std::size_t j, MomentCombination value) const {
  BracketTable t = *this;
  MomentCombination neg = value;
  for (auto& term : neg) term.coeff = -term.coeff;
  t.entries_[i][j] = std::move(value);
  t.entries_[j][i] = std::move(neg);
  return t;
}

double BracketTable::evaluate(std::size_t i, std::size_t j,
                              const std::array<double, kSphereMoments>& g) const {
  double v = 0.0;
  for (const auto& term : entries_[i][j])
    v += boost::rational_cast<double>(term.coeff) * g[term.slot];
  return v;
}

const BracketTable& default_table(Mode mode) {
  static const BracketTable sphere = BracketTable::build(Mode::sphere);
  static const BracketTable circle = BracketTable::build(Mode::circle);
  return mode == Mode::sphere ? sphere : circle;
}

MomentCombination bracket(const MomentIndex& a, const MomentIndex& b) {
  if (a.mode != b.mode) throw std::invalid_argument("bracket: mixed modes");
  return default_table(a.mode).entry(moment_slot(a), moment_slot(b));
}

SquareMatrix poisson_tensor(const MomentState& state, const BracketTable& table) {
  if (table.mode() != state.mode) throw std::invalid_argument("poisson_tensor: mode mismatch");
  const std::size_t nc = classical_count(state.mode);
  const std::size_t nm = moment_count(state.mode);
  SquareMatrix P{nc + nm, std::vector<double>((nc + nm) * (nc + nm), 0.0)};
  for (std::size_t q = 0; q < nc; q += 2) {
    P(q, q + 1) = 1.0;
    P(q + 1, q) = -1.0;
  }
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t j = 0; j < nm; ++j) P(nc + i, nc + j) = table.evaluate(i, j, state.moments);
  return P;
}

SquareMatrix poisson_tensor(const MomentState& state) {
  return poisson_tensor(state, default_table(state.mode));
}

EffectiveHamiltonian effective_hamiltonian(const HamiltonianModel& model,
                                           const ThetaPotential* potential,
                                           const MomentState& state) {
  if (model.mode() != state.mode) throw std::invalid_argument("model/state mode mismatch");
  Partials p = model.partials(state.classical);
  if (potential) {
    const auto v = potential->derivatives(state.classical.theta);
    p.value += v[0];
    p.grad[0] += v[1];
    p.hess[0][0] += v[2];
    p.third[0][0][0] += v[3];
  }
  const Mode mode = state.mode;
  const std::size_t nc = classical_count(mode);
  EffectiveHamiltonian h;
  h.value = p.value;
  for (std::size_t k = 0; k < nc; ++k) h.gradient[k] = p.grad[k];
  for (std::size_t s = 0; s < moment_count(mode); ++s) {
    const auto [i, j] = moment_variables(s, mode);
    const double w = i == j ? 0.5 : 1.0;
    const double g = state.moments[s];
    h.value += w * p.hess[i][j] * g;
    for (std::size_t k = 0; k < nc; ++k) h.gradient[k] += w * p.third[i][j][k] * g;
    h.gradient[nc + s] = w * p.hess[i][j];
  }
  return h;
}

MomentState generic_rhs(const HamiltonianModel& model, const ThetaPotential* potential,
                        const MomentState& state, const SystemParams& params,
                        const BracketTable& table, double sin_floor) {
  check_params(params);
  if (table.mode() != state.mode) throw std::invalid_argument("generic_rhs: table mode mismatch");
  if (state.mode == Mode::sphere && std::abs(std::sin(state.classical.theta)) < sin_floor)
    throw SingularityError(state.classical.theta, sin_floor);

  const auto h = effective_hamiltonian(model, potential, state);
  const std::size_t nc = classical_count(state.mode);
  const std::size_t nm = moment_count(state.mode);
  PhaseVector dy{};
  for (std::size_t q = 0; q < nc; q += 2) {
    dy[q] = h.gradient[q + 1];
    dy[q + 1] = -h.gradient[q];
  }
  for (std::size_t i = 0; i < nm; ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < nm; ++j) v += table.evaluate(i, j, state.moments) * h.gradient[nc + j];
    dy[nc + i] = v;
  }
  return MomentState::from_phase(dy, state.mode);
}

MomentState generic_rhs(const HamiltonianModel& model, const ThetaPotential* potential,
                        const MomentState& state, const SystemParams& params, double sin_floor) {
  return generic_rhs(model, potential, state, params, default_table(state.mode), sin_floor);
}

}  // namespace momentous
