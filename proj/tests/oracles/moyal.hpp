#pragma once

// Exact Moyal-bracket calculus on polynomial phase-space symbols with
// rational coefficients. Independent of the library's bracket table: symbols
// are plain monomial maps and the bracket is the sine series of the Poisson
// bidifferential operator.

#include <array>
#include <boost/rational.hpp>
#include <map>
#include <vector>

namespace oracle {

using Q = boost::rational<long long>;
// Exponents over (q1, p1, q2, p2).
using Monomial = std::array<int, 4>;
using Poly = std::map<Monomial, Q>;

inline Poly monomial(const Monomial& m, Q c = Q(1)) { return Poly{{m, c}}; }

inline long long falling(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

inline Poly derivative(const Poly& f, const Monomial& order) {
  Poly out;
  for (const auto& [m, c] : f) {
    Monomial e = m;
    long long factor = 1;
    bool zero = false;
    for (int i = 0; i < 4; ++i) {
      if (order[i] > m[i]) {
        zero = true;
        break;
      }
      factor *= falling(m[i], order[i]);
      e[i] -= order[i];
    }
    if (!zero) out[e] += c * Q(factor);
  }
  return out;
}

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m;
      for (int i = 0; i < 4; ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  return out;
}

inline void prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == Q(0) ? p.erase(it) : std::next(it);
}

// One term of Lambda^k: derivative orders applied to f and to g.
struct BiTerm {
  Monomial on_f;
  Monomial on_g;
  Q coeff;
};

/// Lambda^k with Lambda = sum_i (d/dq_i <- -> d/dp_i  -  d/dp_i <- -> d/dq_i),
/// restricted to `dof` canonical pairs.
inline std::vector<BiTerm> lambda_power(int k, int dof) {
  std::map<std::pair<Monomial, Monomial>, Q> cur{{{Monomial{}, Monomial{}}, Q(1)}};
  for (int step = 0; step < k; ++step) {
    std::map<std::pair<Monomial, Monomial>, Q> next;
    for (const auto& [key, c] : cur)
      for (int i = 0; i < dof; ++i) {
        auto a = key;
        a.first[2 * i] += 1;
        a.second[2 * i + 1] += 1;
        next[a] += c;
        auto b = key;
        b.first[2 * i + 1] += 1;
        b.second[2 * i] += 1;
        next[b] -= c;
      }
    cur = std::move(next);
  }
  std::vector<BiTerm> out;
  for (const auto& [key, c] : cur)
    if (c != Q(0)) out.push_back({key.first, key.second, c});
  return out;
}

/// {f, g}_Moyal = sum over odd k of (-1)^((k-1)/2) (hbar/2)^(k-1) / k! f Lambda^k g.
/// The series terminates because the symbols are polynomials.
inline Poly moyal_bracket(const Poly& f, const Poly& g, Q hbar, int dof) {
  int deg = 0;
  for (const auto* p : {&f, &g})
    for (const auto& [m, c] : *p) deg = std::max(deg, m[0] + m[1] + m[2] + m[3]);
  Poly out;
  Q half_hbar_pow(1);
  long long kfact = 1;
  for (int k = 1; k <= deg; k += 2) {
    if (k > 1) {
      half_hbar_pow *= (hbar / Q(2)) * (hbar / Q(2));
      kfact *= static_cast<long long>(k - 1) * k;
    }
    const Q sign = ((k - 1) / 2) % 2 ? Q(-1) : Q(1);
    const Q pref = sign * half_hbar_pow / Q(kfact);
    for (const auto& t : lambda_power(k, dof)) {
      const Poly term = multiply(derivative(f, t.on_f), derivative(g, t.on_g));
      for (const auto& [m, c] : term) out[m] += pref * t.coeff * c;
    }
  }
  prune(out);
  return out;
}

/// Bracket of two Weyl-ordered central moments, expressed as expectation
/// values: the symbol of G^A is the monomial xi^A in fluctuation variables,
/// and the expectation of a degree-2 monomial xi^C is G^C. Degree-1 terms
/// have zero expectation. Returns the map C -> coefficient; `ok` is false if
/// a constant or higher-order remainder appears.
struct MomentBracket {
  std::map<Monomial, Q> terms;
  bool ok = true;
};

inline MomentBracket moment_bracket(const Monomial& a, const Monomial& b, Q hbar, int dof) {
  const Poly r = moyal_bracket(monomial(a), monomial(b), hbar, dof);
  MomentBracket out;
  for (const auto& [m, c] : r) {
    const int deg = m[0] + m[1] + m[2] + m[3];
    if (deg == 2) {
      out.terms[m] = c;
    } else if (deg != 1) {
      out.ok = false;
    }
  }
  return out;
}

}  // namespace oracle
