#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles/quadrature.hpp"
#include "momentous/initial_states.hpp"

using namespace momentous;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("circle closed forms at the reference width") {
  GaussianSpec g;
  const auto s = circle_initial_moments(g, {});
  CHECK(s.mode == Mode::circle);
  CHECK(s.classical.p_theta == 10.0);
  CHECK(s.moments[0] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(s.moments[2] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.moments[1] == 0.0);
  CHECK(validate_state(s, {}, 1e-9).valid());

  g.correlation = CorrelationPolicy::boundary_magnitude;
  CHECK(std::abs(circle_initial_moments(g, {}).moments[1]) < 1e-12);
  g.correlation = CorrelationPolicy::explicit_value;
  g.correlation_value = 0.25;
  CHECK(circle_initial_moments(g, {}).moments[1] == 0.25);
}

TEST_CASE("circle and azimuthal closed forms match quadrature") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lam(0.3, 25.0);
  for (int i = 0; i < 20; ++i) {
    const double l = lam(rng);
    const double hbar = 0.5 + i * 0.1;
    const auto q = oracle::circle_moments_quad(l, hbar);
    GaussianSpec g;
    g.lambda = l;
    SystemParams p;
    p.hbar = hbar;
    const auto c = circle_initial_moments(g, p);
    CHECK(rel(c.moments[0], q.g20) < 1e-10);
    CHECK(rel(c.moments[2], q.g02) < 1e-10);
    const auto s = sphere_initial_moments(g, p);
    CHECK(rel(s.moments[7], q.g20) < 1e-10);
    CHECK(rel(s.moments[9], q.g02) < 1e-10);
  }
}

TEST_CASE("polar variance matches quadrature") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> kap(0.5, 60.0);
  for (int i = 0; i < 20; ++i) {
    const double k = kap(rng);
    CHECK(rel(sphere_polar_variance(k), oracle::polar_moments_quad(k, 1.0).g2000) < 1e-10);
  }
}

TEST_CASE("polar momentum closed form saturates the uncertainty floor") {
  for (double k : {0.5, 3.0, 10.0, 40.0}) {
    const double g2 = sphere_polar_variance(k);
    CHECK(rel(sphere_polar_momentum_variance(k, 1.0), 0.25 / g2) < 1e-12);
    CHECK(rel(sphere_polar_momentum_variance(k, 2.0), 1.0 / g2) < 1e-12);
  }
  // The geometric-momentum expectation exceeds the saturated value slightly.
  const double q = oracle::polar_moments_quad(10.0, 1.0).g0200;
  const double d = rel(sphere_polar_momentum_variance(10.0, 1.0), q);
  CHECK(d > 1e-7);
  CHECK(d < 1e-4);
}

TEST_CASE("solve_kappa inverts the polar variance") {
  CHECK(solve_kappa(0.0475, {}) == doctest::Approx(10.0).epsilon(1e-10));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> kap(0.01, 200.0);
  for (int i = 0; i < 25; ++i) {
    const double k = kap(rng);
    CHECK(solve_kappa(sphere_polar_variance(k), {}) == doctest::Approx(k).epsilon(1e-8));
  }
  const auto r = kappa_search_range();
  CHECK(r.g_min < 0.0475);
  CHECK(r.g_max > 0.0475);
  CHECK_THROWS_AS(solve_kappa(5.0, {}), DomainError);
  CHECK_THROWS_WITH(solve_kappa(1e-6, {}), doctest::Contains("attainable"));
}

TEST_CASE("tabulated and closed-form reference states") {
  const SystemParams p;
  InitialConditions ic;
  ic.gaussian.p_theta0 = 1.0;
  const auto t = make_initial_state(Mode::sphere, ic, p);
  CHECK(t.classical.theta == doctest::Approx(kPi / 2));
  CHECK(t.classical.p_theta == 1.0);
  CHECK(t.classical.p_phi == 10.0);
  CHECK(t.moments[0] == 0.0475);
  CHECK(t.moments[4] == 5.26316);
  CHECK(t.moments[7] == 0.05);
  CHECK(t.moments[9] == 5.0);
  CHECK(t.moments[1] == 0.0);
  CHECK(validate_state(t, p, 1e-9).valid());

  ic.source = MomentsSource::closed_form;
  const auto c = make_initial_state(Mode::sphere, ic, p);
  CHECK(std::abs(c.moments[0] - 0.0475) < 1e-9);
  CHECK(std::abs(c.moments[4] - 5.26316) < 3e-6);
  CHECK(std::abs(c.moments[7] - 0.05) < 1e-12);
  CHECK(std::abs(c.moments[9] - 5.0) < 1e-10);

  ic.kappa_target = 0.0475;
  ic.gaussian.kappa = 99.0;
  const auto k = make_initial_state(Mode::sphere, ic, p);
  CHECK(k.moments[0] == doctest::Approx(0.0475).epsilon(1e-10));
}

TEST_CASE("initial states pass validation at 1e-9") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> lam(3.0, 30.0), kap(3.0, 60.0);
  for (int i = 0; i < 30; ++i) {
    InitialConditions ic;
    ic.source = MomentsSource::closed_form;
    ic.gaussian.lambda = lam(rng);
    ic.gaussian.kappa = kap(rng);
    CHECK(validate_state(make_initial_state(Mode::sphere, ic, {}), {}, 1e-9).valid());
    CHECK(validate_state(make_initial_state(Mode::circle, ic, {}), {}, 1e-9).valid());
  }
}

TEST_CASE("spec validation") {
  GaussianSpec g;
  g.lambda = -1.0;
  CHECK_THROWS_WITH(check_spec(g, Mode::circle), doctest::Contains("lambda"));
  g = {};
  g.kappa = 0.0;
  CHECK_THROWS_WITH(check_spec(g, Mode::sphere), doctest::Contains("kappa"));
  CHECK_NOTHROW(check_spec(g, Mode::circle));
  g = {};
  g.theta0 = 0.0;
  CHECK_THROWS_AS(check_spec(g, Mode::sphere), std::invalid_argument);
  CHECK(correlation_policy_from_string("explicit") == CorrelationPolicy::explicit_value);
  CHECK_THROWS_AS(correlation_policy_from_string("other"), std::invalid_argument);
  CHECK(moments_source_from_string(to_string(MomentsSource::closed_form)) ==
        MomentsSource::closed_form);
}
