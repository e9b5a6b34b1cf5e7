#include <doctest.h>

#include <cmath>
#include <limits>

#include "momentous/analysis.hpp"
#include "momentous/initial_states.hpp"

using namespace momentous;

namespace {

// Sample-only trajectory with theta(t) given on a uniform grid.
template <class F>
Trajectory synthetic(F theta, double t_end, double dt = 0.1) {
  Trajectory tr;
  tr.mode = Mode::sphere;
  const int n = static_cast<int>(std::lround(t_end / dt));
  for (int k = 0; k <= n; ++k) {
    Sample s;
    s.t = k * dt;
    s.state.mode = Mode::sphere;
    s.state.classical.theta = theta(s.t);
    tr.samples.push_back(s);
  }
  tr.status.tag = Termination::completed;
  tr.status.time = t_end;
  return tr;
}

EnsembleRun run_at(double theta_end, double t_last = 10.0) {
  EnsembleRun r;
  r.semiclassical = synthetic([&](double t) { return kPi / 2 + (theta_end - kPi / 2) * t / t_last; },
                              t_last);
  return r;
}

MomentState reference(double a) {
  InitialConditions ic;
  ic.gaussian.p_theta0 = a;
  return make_initial_state(Mode::sphere, ic, {});
}

}  // namespace

TEST_CASE("summary statistics use the population deviation") {
  const auto m = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == 2.5);
  CHECK(m.stddev == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK(m.min == 1.0);
  CHECK(m.max == 4.0);
  CHECK(m.n == 4);
  CHECK(summarize({}).n == 0);
}

TEST_CASE("uncertainty series recomputed from moments") {
  const auto tr = integrate({SystemTag::sphere_free, MomentPolicy::evolve}, reference(1.0), {});
  const auto u = uncertainty_products(tr);
  REQUIRE(u.t.size() == tr.samples.size());
  for (std::size_t k = 0; k < u.t.size(); ++k) {
    CHECK(u.dG_theta[k] == doctest::Approx(tr.samples[k].dG_theta).epsilon(1e-14));
    CHECK(u.dG_phi[k] >= 0.25 - 1e-9);
  }
  CHECK(u.min_theta >= 0.25 - 1e-9);
}

TEST_CASE("phase shift against the zeroed run") {
  const auto s0 = reference(1.0);
  const auto sc = integrate({SystemTag::sphere_free, MomentPolicy::evolve}, s0, {});
  const auto cl = integrate({SystemTag::sphere_free, MomentPolicy::zeroed}, s0, {});
  const auto ps = phase_shift(sc, cl);
  REQUIRE(ps.t.size() == sc.samples.size());
  CHECK(ps.dtheta.front() == 0.0);
  CHECK(ps.dphi_end == doctest::Approx(sc.back().state.classical.phi - cl.back().state.classical.phi));
  CHECK(ps.dtheta_end ==
        doctest::Approx(sc.back().state.classical.theta - cl.back().state.classical.theta));

  Trajectory circle;
  circle.mode = Mode::circle;
  circle.samples.resize(2);
  CHECK_THROWS_AS(phase_shift(sc, circle), std::invalid_argument);
}

TEST_CASE("near-equator estimates") {
  SystemParams p;
  CHECK(predicted_phase_shift(p, 10.0, 0.0475, 0.0, 10.0) == doctest::Approx(9.5).epsilon(1e-14));
  CHECK(predicted_phase_shift(p, 10.0, 0.0475, 0.1, 10.0) ==
        doctest::Approx(2 * 10.0 * (0.0475 * 10 + 0.2 * 100)).epsilon(1e-14));
  p.mass = 2.0;
  p.radius = 0.5;
  CHECK(predicted_phase_shift(p, 1.0, 1.0, 0.0, 1.0) == doctest::Approx(4.0));
  p.hbar = 0.5;
  CHECK(phase_shift_scaling(p, 3.0, 0.1, 2.0) == doctest::Approx(3.0 * 0.1 * 2.0 / (0.5 * 0.25)));
}

TEST_CASE("hemisphere counting") {
  EnsembleResult ens;
  ens.runs = {run_at(2.0), run_at(1.0), run_at(2.5), run_at(kPi / 2)};
  auto h = hemisphere_ratio(ens, 10.0);
  CHECK(h.south == 2);
  CHECK(h.north == 1);
  CHECK(h.equator == 1);
  CHECK(h.ratio == 2.0);

  ens.runs = {run_at(2.0)};
  h = hemisphere_ratio(ens, 10.0);
  CHECK(h.ratio == std::numeric_limits<double>::infinity());

  // A point within the equator band counts toward neither side.
  ens.runs = {run_at(kPi / 2 + 1e-12), run_at(kPi / 2 + 1e-3)};
  h = hemisphere_ratio(ens, 10.0);
  CHECK(h.equator == 1);
  CHECK(h.south == 1);
  CHECK(hemisphere_ratio(ens, 10.0, TerminationPolicy::last_valid_state, 0.0).south == 2);
}

TEST_CASE("termination policies") {
  EnsembleResult ens;
  auto early = run_at(2.0, 4.0);  // ends at t = 4 in the south
  early.semiclassical.status.tag = Termination::pole_singularity;
  auto failed = run_at(1.0);
  failed.error = "config";
  ens.runs = {early, run_at(1.0), failed};

  auto h = hemisphere_ratio(ens, 10.0, TerminationPolicy::last_valid_state);
  CHECK(h.south == 1);
  CHECK(h.north == 1);
  CHECK(h.excluded == 1);
  h = hemisphere_ratio(ens, 10.0, TerminationPolicy::exclude_terminated);
  CHECK(h.south == 0);
  CHECK(h.excluded == 2);

  CHECK(*mean_theta(ens, 10.0) == doctest::Approx(1.5));
  CHECK(*mean_theta(ens, 10.0, TerminationPolicy::exclude_terminated) == doctest::Approx(1.0));
  CHECK(*theta_at(early.semiclassical, 2.0, TerminationPolicy::exclude_terminated) ==
        doctest::Approx(kPi / 2 + (2.0 - kPi / 2) / 2));
  EnsembleResult none;
  CHECK_FALSE(mean_theta(none, 1.0).has_value());

  CHECK(termination_policy_from_string(to_string(TerminationPolicy::exclude_terminated)) ==
        TerminationPolicy::exclude_terminated);
  CHECK_THROWS_AS(termination_policy_from_string("sometimes"), ConfigError);
}

TEST_CASE("time to reach a polar angle") {
  const auto tr = synthetic([](double t) { return 1.0 + 0.1 * t; }, 10.0);
  CHECK(*time_to_theta(tr, 1.55) == doctest::Approx(5.5).epsilon(1e-10));
  CHECK_FALSE(time_to_theta(tr, 2.5).has_value());
  CHECK(*time_to_theta(tr, 1.0) == 0.0);
  CHECK_THROWS_AS(time_to_theta(tr, 0.0), std::invalid_argument);

  // Dense output: theta = pi/2 + t exactly for the zeroed free sphere with P_phi = 0.
  InitialConditions ic;
  ic.gaussian.l = 0;
  ic.gaussian.p_theta0 = 1.0;
  const auto s0 = make_initial_state(Mode::sphere, ic, {});
  const auto d = integrate({SystemTag::sphere_free, MomentPolicy::zeroed}, s0, {});
  CHECK(*time_to_theta(d, 2.0) == doctest::Approx(2.0 - kPi / 2).epsilon(1e-10));
}

TEST_CASE("ensemble statistics need classical partners") {
  EnsembleResult ens;
  ens.runs = {run_at(2.0)};
  CHECK_THROWS_AS(ensemble_stats(ens, 10.0), std::invalid_argument);
}
