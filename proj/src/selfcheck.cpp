#include "momentous/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "momentous/analysis.hpp"
#include "momentous/initial_states.hpp"

namespace momentous {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

// Covariance matrix in (theta, P_theta, phi, P_phi) order.
std::array<std::array<double, 4>, 4> covariance(const MomentState& s) {
  std::array<std::array<double, 4>, 4> c{};
  for (std::size_t k = 0; k < moment_count(s.mode); ++k) {
    const auto [i, j] = moment_variables(k, s.mode);
    c[i][j] = c[j][i] = s.moments[k];
  }
  return c;
}

double det4(std::array<std::array<double, 4>, 4> m) {
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

// Component-wise agreement |a - b| <= rel * max(|a|, |b|), with an absolute
// floor for entries that vanish in both.
bool close(double a, double b, double rel, double abs_floor) {
  const double d = std::abs(a - b);
  return d <= rel * std::max(std::abs(a), std::abs(b)) || d <= abs_floor;
}

MomentState reference_state(const SystemParams& p) {
  InitialConditions ic;
  ic.gaussian.p_theta0 = 1.0;
  return make_initial_state(Mode::sphere, ic, p);
}

SystemParams makarov_params(double gamma) {
  SystemParams p;
  p.beta = 2.0;
  p.gamma = gamma;
  return p;
}

double max_abs_change(const Trajectory& t, auto&& f) {
  const double f0 = f(t.front().state);
  double m = 0.0;
  for (const auto& s : t.samples) m = std::max(m, std::abs(f(s.state) - f0));
  return m;
}

}  // namespace

double min_symplectic_eigenvalue(const MomentState& s) {
  const auto c = covariance(s);
  if (s.mode == Mode::circle) return std::sqrt(std::max(0.0, det2(c[0][0], c[0][1], c[1][0], c[1][1])));
  const double delta = det2(c[0][0], c[0][1], c[1][0], c[1][1]) +
                       det2(c[2][2], c[2][3], c[3][2], c[3][3]) +
                       2.0 * det2(c[0][2], c[0][3], c[1][2], c[1][3]);
  const double d = det4(c);
  const double disc = std::max(0.0, delta * delta - 4.0 * d);
  return std::sqrt(std::max(0.0, 0.5 * (delta - std::sqrt(disc))));
}

MomentState random_valid_state(Mode mode, std::mt19937_64& rng, const SystemParams& params) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

  MomentState s;
  s.mode = mode;
  const std::size_t n = mode == Mode::sphere ? 4 : 2;
  if (mode == Mode::sphere) {
    s.classical = {in(0.4, kPi - 0.4), in(-3.0, 3.0), in(-kPi, kPi), in(-12.0, 12.0)};
  } else {
    s.classical = {in(-kPi, kPi), in(-5.0, 5.0), 0.0, 0.0};
  }

  std::array<std::array<double, 4>, 4> L{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) L[i][j] = in(-1.0, 1.0);
    L[i][i] = in(0.3, 1.5);
  }
  for (std::size_t k = 0; k < moment_count(mode); ++k) {
    const auto [i, j] = moment_variables(k, mode);
    double v = 0.0;
    for (std::size_t r = 0; r < n; ++r) v += L[i][r] * L[j][r];
    s.moments[k] = v;
  }
  const double nu = min_symplectic_eigenvalue(s);
  const double target = 0.5 * params.hbar * std::exp(in(std::log(1.001), std::log(8.0)));
  const double scale = target / nu;
  for (std::size_t k = 0; k < moment_count(mode); ++k) s.moments[k] *= scale;
  return s;
}

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::vector<std::string> suite_names() { return {"oracle", "conservation", "uncertainty", "convergence"}; }

SuiteResult oracle_suite(const SelfCheckOptions& opt) {
  SuiteResult r{"oracle", {}};
  std::mt19937_64 rng(opt.seed);

  BracketTable sphere_table = default_table(Mode::sphere);
  if (opt.flip_bracket) {
    const auto [i, j] = *opt.flip_bracket;
    if (i >= kSphereMoments || j >= kSphereMoments)
      throw ConfigError("flip_bracket: slot index out of range");
    MomentCombination flipped = sphere_table.entry(i, j);
    for (auto& t : flipped) t.coeff = -t.coeff;
    sphere_table = sphere_table.with_entry(i, j, flipped);
  }

  struct Case {
    SystemTag tag;
    SystemParams params;
  };
  SystemParams makarov = makarov_params(-1.9);
  makarov.alpha = 0.5;
  const Case cases[] = {{SystemTag::circle_free, {}},
                        {SystemTag::sphere_free, {}},
                        {SystemTag::sphere_makarov, makarov}};

  for (const auto& c : cases) {
    const SystemKind kind{c.tag, MomentPolicy::evolve};
    const Mode mode = kind.mode();
    const auto model = mode == Mode::circle ? HamiltonianModel::free_circle(c.params)
                                            : HamiltonianModel::free_sphere(c.params);
    const auto potential = ThetaPotential::makarov(c.params);
    const ThetaPotential* pot = c.tag == SystemTag::sphere_makarov ? &potential : nullptr;
    const BracketTable& table = mode == Mode::sphere ? sphere_table : default_table(Mode::circle);

    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < opt.random_states; ++k) {
      const auto s = random_valid_state(mode, rng, c.params);
      const auto a = rhs(kind, s, c.params).to_phase();
      const auto b = generic_rhs(model, pot, s, c.params, table).to_phase();
      bool ok = true;
      for (std::size_t i = 0; i < phase_dimension(mode); ++i) {
        const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
        if (scale > 0) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
        ok = ok && close(a[i], b[i], 1e-6, 1e-12);
      }
      bad += !ok;
    }
    r.checks.push_back({"hand-coded vs bracket-derived rhs, " + to_string(c.tag), bad == 0,
                        std::to_string(opt.random_states - bad) + "/" +
                            std::to_string(opt.random_states) + " states agree, worst rel " +
                            num(worst)});
  }
  return r;
}

SuiteResult conservation_suite() {
  SuiteResult r{"conservation", {}};
  const SystemParams free{};
  const auto s0 = reference_state(free);
  const auto t = integrate({SystemTag::sphere_free, MomentPolicy::evolve}, s0, free);
  const double dp = max_abs_change(t, [](const MomentState& s) { return s.classical.p_phi; });
  const double dg = max_abs_change(t, [](const MomentState& s) { return s.moments[9]; });
  double de = 0.0;
  for (const auto& s : t.samples) de = std::max(de, std::abs(s.energy - t.front().energy));
  de /= std::abs(t.front().energy);
  r.checks.push_back({"free sphere completes", t.status.tag == Termination::completed,
                      to_string(t.status.tag)});
  r.checks.push_back({"free sphere |dP_phi| < 1e-10", dp < 1e-10, num(dp)});
  r.checks.push_back({"free sphere |dG0002| < 1e-10", dg < 1e-10, num(dg)});
  r.checks.push_back({"free sphere |dH_Q|/H_Q < 1e-8", de < 1e-8, num(de)});

  const auto mp = makarov_params(-0.2);
  const auto m0 = reference_state(mp);
  const auto tm = integrate({SystemTag::sphere_makarov, MomentPolicy::evolve}, m0, mp);
  double dm = 0.0;
  for (const auto& s : tm.samples) dm = std::max(dm, std::abs(s.energy - tm.front().energy));
  dm /= std::abs(tm.front().energy);
  const double dpm = max_abs_change(tm, [](const MomentState& s) { return s.classical.p_phi; });
  r.checks.push_back({"makarov gamma=-0.2 |dH|/H < 1e-8", dm < 1e-8, num(dm)});
  r.checks.push_back({"makarov gamma=-0.2 |dP_phi| < 1e-10", dpm < 1e-10, num(dpm)});

  const auto c0 = make_initial_state(Mode::circle, InitialConditions{}, free);
  const auto tc = integrate({SystemTag::circle_free, MomentPolicy::evolve}, c0, free);
  const double dpc = max_abs_change(tc, [](const MomentState& s) { return s.classical.p_theta; });
  const double dg02 = max_abs_change(tc, [](const MomentState& s) { return s.moments[2]; });
  r.checks.push_back({"circle P and G02 constant (1e-12)", dpc < 1e-12 && dg02 < 1e-12,
                      num(std::max(dpc, dg02))});
  return r;
}

SuiteResult uncertainty_suite() {
  SuiteResult r{"uncertainty", {}};
  const double floor = 0.25 - 1e-9;
  auto check = [&](const std::string& name, SystemTag tag, const SystemParams& p) {
    const auto t = integrate({tag, MomentPolicy::evolve}, reference_state(p), p);
    const auto u = uncertainty_products(t);
    r.checks.push_back({name + " dG_theta >= hbar^2/4", u.min_theta >= floor, num(u.min_theta)});
    r.checks.push_back({name + " dG_phi >= hbar^2/4", u.min_phi >= floor, num(u.min_phi)});
  };
  check("free sphere", SystemTag::sphere_free, {});
  check("makarov gamma=-0.2", SystemTag::sphere_makarov, makarov_params(-0.2));

  std::mt19937_64 rng(7);
  std::size_t bad = 0;
  for (int k = 0; k < 200; ++k) {
    const Mode mode = k % 2 ? Mode::sphere : Mode::circle;
    const auto s = random_valid_state(mode, rng, {});
    bad += !validate_state(s, {}, 1e-9).valid();
  }
  r.checks.push_back({"random physical states pass validate_state", bad == 0,
                      std::to_string(bad) + " rejected of 200"});
  return r;
}

SuiteResult convergence_suite() {
  SuiteResult r{"convergence", {}};
  const SystemParams p{};
  const auto rep = convergence_check({SystemTag::sphere_free, MomentPolicy::evolve},
                                     reference_state(p), p, {1e-6, 1e-8, 1e-10});
  r.checks.push_back({"free sphere tolerance ladder monotone", rep.monotone,
                      "min ratio " + num(rep.min_ratio)});
  r.checks.push_back({"default tolerance in convergent regime", rep.default_in_regime, rep.note});

  // One period of a harmonic oscillator through the bracket-derived flow
  // returns every coordinate and moment to its start.
  const auto model = HamiltonianModel::harmonic_oscillator(1.0);
  const auto flow = make_generic_flow(model, nullptr, p);
  MomentState s0;
  s0.mode = Mode::circle;
  s0.classical = {0.7, -0.3, 0.0, 0.0};
  s0.moments = {0.8, 0.1, 0.6};
  IntegratorConfig cfg;
  cfg.t_end = 2.0 * kPi;
  cfg.sample_dt = 0.1;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-13;
  const auto t = integrate_flow(flow, s0, cfg);
  const auto a = s0.to_phase();
  const auto b = t.back().state.to_phase();
  double err = 0.0;
  for (std::size_t i = 0; i < phase_dimension(Mode::circle); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  r.checks.push_back({"harmonic oscillator period return < 1e-8",
                      t.status.tag == Termination::completed && err < 1e-8, num(err)});
  return r;
}

std::vector<SuiteResult> run_selfcheck(const SelfCheckOptions& options) {
  const auto names = suite_names();
  for (const auto& s : options.suites)
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw ConfigError("validate: unknown suite '" + s + "'");
  auto wanted = [&](const std::string& s) {
    return options.suites.empty() ||
           std::find(options.suites.begin(), options.suites.end(), s) != options.suites.end();
  };
  std::vector<SuiteResult> out;
  if (wanted("oracle")) out.push_back(oracle_suite(options));
  if (wanted("conservation")) out.push_back(conservation_suite());
  if (wanted("uncertainty")) out.push_back(uncertainty_suite());
  if (wanted("convergence")) out.push_back(convergence_suite());
  return out;
}

}  // namespace momentous
